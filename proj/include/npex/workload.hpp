#pragma once

// Per-packet service models for the benchmark applications.
//
// A packet costs compute_cycles of pipeline execution plus the listed SRAM
// and SDRAM accesses; poll_cycles is the busy loop an empty thread runs
// between queue checks. The counts model total per-packet work including
// payload movement, so they sit well above instruction-level figures. Only
// the qualitative ordering is contractual: nat touches memory least, url
// and md4 the most.

#include <stdexcept>
#include <string>

namespace npex::sim {

struct WorkloadProfile {
    std::string name = "custom";
    int compute_cycles = 0;
    int sram_accesses = 0;
    int sdram_accesses = 0;
    int poll_cycles = 8;

    int memory_accesses() const { return sram_accesses + sdram_accesses; }

    void validate() const {
        if (compute_cycles < 0 || sram_accesses < 0 || sdram_accesses < 0 || poll_cycles < 1)
            throw std::invalid_argument("workload profile counts must be non-negative (poll_cycles >= 1)");
    }

    static WorkloadProfile builtin(const std::string& name) {
        if (name == "ipfwdr") return {"ipfwdr", 600, 10, 24, 8};
        if (name == "url") return {"url", 1000, 36, 30, 8};
        if (name == "nat") return {"nat", 60, 1, 0, 8};
        if (name == "md4") return {"md4", 2600, 44, 12, 8};
        throw std::invalid_argument("unknown workload profile '" + name + "'");
    }
};

} // namespace npex::sim
