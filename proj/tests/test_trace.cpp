#include "npex/trace.hpp"
#include "npex/traffic.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace npex;

namespace {

const std::vector<std::string> kFig4Header = {"cycle", "time", "energy", "p_loss"};

const char* kFig4Trace =
    "# annotations: cycle time energy p_loss\n"
    "365 1.573 0.768133 120 m2_pipeline\n"
    "366 1.577 0.773932 120 m3_pipeline\n"
    "367 1.580 0.784506 121 forward\n"
    "368 1.583 0.794108 121 m5_pipeline\n"
    "369 1.587 0.809369 121 m4_pipeline\n";

} // namespace

TEST_CASE("parse_trace_line binds columns positionally") {
    auto ev = trace::parse_trace_line("367 1.580 0.784506 121 forward", kFig4Header, 3);
    CHECK(ev.name == "forward");
    CHECK(ev.values == std::vector<double>{367, 1.580, 0.784506, 121});
}

TEST_CASE("parse_trace_line accepts an all-zero row") {
    auto ev = trace::parse_trace_line("0 0 0 0 fifo", kFig4Header);
    CHECK(ev.name == "fifo");
    CHECK(ev.values == std::vector<double>(4, 0.0));
}

TEST_CASE("parse_trace_line rejects wrong column counts and bad numbers") {
    CHECK_THROWS_WITH(trace::parse_trace_line("367 1.580 forward", kFig4Header, 7),
                      Catch::Matchers::ContainsSubstring("line 7"));
    CHECK_THROWS_AS(trace::parse_trace_line("367 x 0.7 121 forward", kFig4Header), trace::ParseError);
    CHECK_THROWS_AS(trace::parse_trace_line("1 2 3 4 5", kFig4Header), trace::ParseError);
}

TEST_CASE("read_trace yields events in file order") {
    std::istringstream in(kFig4Trace);
    auto t = trace::read_trace(in);
    REQUIRE(t.size() == 5);
    CHECK(t.header() == kFig4Header);
    std::vector<std::string> names;
    for (const auto& ev : t.events()) names.push_back(ev.name);
    CHECK(names == std::vector<std::string>{"m2_pipeline", "m3_pipeline", "forward", "m5_pipeline",
                                            "m4_pipeline"});
}

TEST_CASE("read_trace handles an empty body and missing header") {
    std::istringstream empty_body("# a comment\n# annotations: cycle time\n\n");
    CHECK(trace::read_trace(empty_body).size() == 0);

    std::istringstream no_header("1 2 x\n");
    CHECK_THROWS_AS(trace::read_trace(no_header), trace::ParseError);
    std::istringstream nothing("");
    CHECK_THROWS_AS(trace::read_trace(nothing), trace::ParseError);
}

TEST_CASE("read_trace warns on decreasing cumulative annotations") {
    std::istringstream in("# annotations: cycle energy\n"
                          "1 0.5 a\n"
                          "2 0.4 b\n"
                          "3 0.6 c\n");
    std::vector<trace::MonotonicityWarning> warnings;
    auto t = trace::read_trace(in, &warnings);
    CHECK(t.size() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].key == "energy");
    CHECK(warnings[0].line == 3);
    CHECK(warnings[0].previous == 0.5);
    CHECK(warnings[0].value == 0.4);
}

TEST_CASE("instance_at looks up the i-th occurrence") {
    std::istringstream in(kFig4Trace);
    auto t = trace::read_trace(in);
    auto idx = trace::EventIndex::build(t);
    CHECK(idx.instance_at("forward", 0) == 2);
    CHECK_FALSE(idx.instance_at("forward", 1).has_value());
    CHECK(idx.instance_at("m2_pipeline", 0) == 0);
    CHECK_FALSE(idx.instance_at("absent", 0).has_value());
}

TEST_CASE("write-then-read round trip preserves names and printed values") {
    traffic::Rng rng(7);
    std::vector<std::string> header = {"cycle", "time", "energy", "total_pkt", "idle_frac"};
    trace::Trace original(header);
    const char* names[] = {"fifo", "forward", "m0_idle", "m3_pipeline"};
    double cycle = 0, time = 0, energy = 0, pkts = 0;
    for (int k = 0; k < 200; ++k) {
        cycle += static_cast<double>(rng.next_u64() % 50);
        time = cycle / 600.0;
        energy += rng.next_unit();
        pkts += static_cast<double>(rng.next_u64() % 2);
        trace::TraceEvent ev;
        ev.name = names[rng.next_u64() % 4];
        // values as the writer would print them
        ev.values = {cycle, std::floor(time * 1e3) / 1e3, std::floor(energy * 1e6) / 1e6, pkts,
                     std::floor(rng.next_unit() * 1e6) / 1e6};
        original.append(ev);
    }

    std::ostringstream out;
    trace::TraceWriter writer(out, header);
    writer.write(original);

    std::istringstream in(out.str());
    std::vector<trace::MonotonicityWarning> warnings;
    auto reread = trace::read_trace(in, &warnings);
    CHECK(warnings.empty());
    REQUIRE(reread.size() == original.size());
    for (std::size_t k = 0; k < original.size(); ++k) {
        CHECK(reread.events()[k].name == original.events()[k].name);
        for (std::size_t a = 0; a < header.size(); ++a)
            CHECK(reread.events()[k].values[a] == Catch::Approx(original.events()[k].values[a]).margin(1e-12));
    }
}

TEST_CASE("event index instances are strictly increasing and cover the trace") {
    traffic::Rng rng(11);
    trace::Trace t(std::vector<std::string>{"cycle"});
    const char* names[] = {"a", "b", "c", "d", "e"};
    for (int k = 0; k < 2000; ++k) {
        trace::TraceEvent ev;
        ev.name = names[rng.next_u64() % 5];
        ev.values = {static_cast<double>(k)};
        t.append(ev);
    }
    auto idx = trace::EventIndex::build(t);
    std::size_t covered = 0;
    for (const auto& [name, positions] : idx.positions()) {
        covered += positions.size();
        for (std::size_t k = 1; k < positions.size(); ++k) CHECK(positions[k - 1] < positions[k]);
        for (std::size_t k = 0; k < positions.size(); ++k) {
            REQUIRE(idx.instance_at(name, k) == positions[k]);
            CHECK(t.events()[positions[k]].name == name);
        }
    }
    CHECK(covered == t.size());
}
