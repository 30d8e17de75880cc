#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "kicked_top/error.hpp"
#include "kicked_top/sweep.hpp"
#include "kicked_top/table.hpp"

using namespace kicked_top;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kOtocTol = 1e-9;
constexpr double kExactTol = 1e-10;

std::string csv(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

Table sample_table() {
    Table t;
    t.columns = {"id", "value", "label"};
    t.metadata.emplace_back("source", "unit test");
    t.add_row({std::int64_t{1}, 0.1, std::string("plain")});
    t.add_row({std::int64_t{-7}, 1.0 / 3.0, std::string("with, comma")});
    t.add_row({std::int64_t{3}, 6.02214076e23, std::string("quote \"q\"")});
    t.add_row({std::int64_t{4}, -2.5e-300, std::string("")});
    t.add_row({std::int64_t{5}, 2.0, std::string("x")});
    return t;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::IoError;
}
} // namespace

TEST_CASE("CSV layout and round trip") {
    const Table t = sample_table();
    const std::string text = csv(t);
    CHECK(text.rfind("# kicked-top-kit v1\n# source=unit test\nid,value,label\n", 0) == 0);
    std::istringstream in(text);
    const Table back = read_csv(in);
    CHECK(back.columns == t.columns);
    CHECK(back.metadata == t.metadata);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(same_bits(back.number(r, "value"), t.number(r, "value")));
        CHECK(back.number(r, "id") == t.number(r, "id"));
        CHECK(format_cell(back.rows[r][2]) == format_cell(t.rows[r][2]));
    }
    CHECK(csv(back) == text);
    Table bad;
    bad.columns = {"a"};
    CHECK(kind_of([&] { bad.add_row({1.0, 2.0}); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { t.column("missing"); }) == ErrorKind::InvalidAxis);
}

TEST_CASE("17 significant digits") {
    CHECK(format_cell(0.1) == "0.10000000000000001");
    CHECK(format_cell(std::int64_t{42}) == "42");
}

TEST_CASE("JSON export") {
    Table t = sample_table();
    t.add_row({std::int64_t{6}, std::nan(""), std::string("missing")});
    std::ostringstream os;
    write_json(t, os);
    const auto j = nlohmann::json::parse(os.str());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == t.rows.size());
    CHECK(j[1]["label"] == "with, comma");
    CHECK(j[2]["label"] == "quote \"q\"");
    CHECK(same_bits(j[1]["value"].get<double>(), 1.0 / 3.0));
    CHECK(j[5]["value"].is_null());
    CHECK(j[0]["id"] == 1);
    std::ostringstream empty;
    write_json(Table{{"a"}, {}, {}}, empty);
    CHECK(nlohmann::json::parse(empty.str()).empty());
}

TEST_CASE("gnuplot blocks") {
    Table t;
    t.columns = {"g", "x"};
    for (int g = 0; g < 3; ++g)
        for (int x = 0; x < 2; ++x) t.add_row({std::int64_t{g}, static_cast<double>(x)});
    std::ostringstream os;
    write_gnuplot(t, os, std::string("g"));
    CHECK(os.str() == "# g x\n0 0\n0 1\n\n\n1 0\n1 1\n\n\n2 0\n2 1\n");
}

TEST_CASE("export to files") {
    const auto dir = std::filesystem::temp_directory_path() / "kicked_top_io_test";
    std::filesystem::create_directories(dir);
    const Table t = sample_table();
    export_table(t, Format::Csv, (dir / "t.csv").string());
    std::ifstream in(dir / "t.csv");
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == csv(t));
    CHECK(kind_of([&] { export_table(t, Format::Csv, (dir / "no/such/dir/t.csv").string()); }) == ErrorKind::IoError);
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("dat") == Format::Gnuplot);
    CHECK(kind_of([] { parse_format("xml"); }) == ErrorKind::InvalidParameter);
    std::filesystem::remove_all(dir);
}

TEST_CASE("single-point OTOC sweep") {
    SweepGrid g;
    g.j2 = {4};
    g.kappa_min = g.kappa_max = 2 * kPi;
    g.kappa_count = 1;
    g.n_min = g.n_max = 2;
    const Table t = run_sweep(g, 2);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::abs(t.number(0, "c_inf") - 68.0 / 5) <= kExactTol);
    CHECK(std::abs(t.number(0, "closed_form") - 68.0 / 5) <= kExactTol);
    CHECK(format_cell(t.rows[0][t.column("provenance")]) == "both");
}

TEST_CASE("empty step range gives an empty table") {
    SweepGrid g;
    g.n_min = 5;
    g.n_max = 4;
    CHECK(grid_size(g) == 0);
    const Table t = run_sweep(g);
    CHECK(t.rows.empty());
    CHECK(!t.columns.empty());
}

TEST_CASE("closed-form and numeric agree across a three- and four-qubit grid") {
    for (SweepTask task : {SweepTask::Otoc, SweepTask::EchoAvg}) {
        SweepGrid g;
        g.task = task;
        g.j2 = {3, 4};
        g.kappa_count = 20;
        g.n_min = task == SweepTask::Otoc ? 1 : 0;
        g.n_max = 30;
        g.delta = {0.05, 0.3};
        const Table t = run_sweep(g);
        double worst = 0.0;
        for (std::size_t r = 0; r < t.rows.size(); ++r) worst = std::max(worst, t.number(r, "abs_diff"));
        CHECK(worst <= kOtocTol);
        CHECK(t.rows.size() == grid_size(g));
    }
    SweepGrid off;
    off.j2 = {3};
    off.kick = 1.0;
    off.kappa_count = 2;
    const Table t = run_sweep(off);
    CHECK(std::isnan(t.number(0, "closed_form")));
    CHECK(format_cell(t.rows[0][t.column("provenance")]) == "numeric");
}

TEST_CASE("state-echo sweep uses closed forms for the two marked states") {
    SweepGrid g;
    g.task = SweepTask::EchoState;
    g.j2 = {3};
    g.kappa_count = 5;
    g.theta0 = {0.0, kPi / 2};
    g.phi0 = {0.0, -kPi / 2};
    g.n_min = 0;
    g.n_max = 12;
    const Table t = run_sweep(g);
    int both = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (format_cell(t.rows[r][t.column("provenance")]) != "both") continue;
        ++both;
        CHECK(t.number(r, "abs_diff") <= kExactTol);
    }
    CHECK(both == 2 * 5 * 13);
}

TEST_CASE("kappa axis defaults") {
    SweepGrid g;
    auto k3 = kappa_values(g, 3);
    CHECK(k3.size() == 50);
    CHECK(k3.front() == 0.0);
    CHECK(std::abs(k3.back() - 1.5 * kPi) <= 1e-15);
    CHECK(std::abs(kappa_values(g, 4).back() - 2 * kPi) <= 1e-15);
    g.task = SweepTask::ClassicalLyapunov;
    CHECK(std::abs(kappa_values(g, 0).back() - 2 * kPi) <= 1e-15);
}

TEST_CASE("grid validation and cap") {
    SweepGrid g;
    g.j2 = {3, 4};
    g.cap = 10;
    CHECK(kind_of([&] { run_sweep(g); }) == ErrorKind::CapExceeded);
    SweepGrid bad;
    bad.j2 = {0};
    CHECK(kind_of([&] { run_sweep(bad); }) == ErrorKind::InvalidAxis);
    bad = SweepGrid{};
    bad.n_min = 0;
    CHECK(kind_of([&] { run_sweep(bad); }) == ErrorKind::InvalidAxis);
    bad = SweepGrid{};
    bad.kappa_count = 0;
    CHECK(kind_of([&] { run_sweep_serial(bad); }) == ErrorKind::InvalidAxis);
    CHECK(kind_of([&] { apply_setting(bad, "colour", "red"); }) == ErrorKind::InvalidAxis);
    CHECK(kind_of([&] { apply_setting(bad, "j2", "3,x"); }) == ErrorKind::InvalidAxis);
    SweepGrid gauss;
    gauss.task = SweepTask::Gauss;
    gauss.j2 = {3};
    CHECK(kind_of([&] { run_sweep(gauss, 3); }) == ErrorKind::UnsupportedSpin);
}

TEST_CASE("config files") {
    std::istringstream in(R"(# OTOC grid
task = echo-avg
j2 = 3, 4   # two spins
kappa0_min = 0
kappa0_max = 3*pi/2
kappa0_count = 7
delta = 0.01,0.1
n_min = 0
steps = 12
kick_angle = pi/2
)");
    SweepGrid g;
    read_config(g, in);
    CHECK(g.task == SweepTask::EchoAvg);
    CHECK(g.j2 == std::vector<int>{3, 4});
    CHECK(std::abs(*g.kappa_max - 1.5 * kPi) <= 1e-15);
    CHECK(g.kappa_count == 7);
    CHECK(g.delta == std::vector<double>{0.01, 0.1});
    CHECK(g.n_max == 12);
    CHECK(g.kick == kPi / 2);
    CHECK(grid_size(g) == 2 * 7 * 2 * 13);
    apply_setting(g, "kappa0", "2pi");
    CHECK(g.kappa_count == 1);
    CHECK(*g.kappa_min == 2 * kPi);
    std::istringstream broken("j2 3\n");
    CHECK(kind_of([&] { read_config(g, broken); }) == ErrorKind::InvalidAxis);
}

TEST_CASE("worker-count invariance") {
    for (SweepTask task : {SweepTask::Otoc, SweepTask::EchoAvg, SweepTask::EchoState,
                           SweepTask::ClassicalLyapunov, SweepTask::Portrait, SweepTask::Gauss}) {
        SweepGrid g;
        g.task = task;
        g.j2 = task == SweepTask::Gauss ? std::vector<int>{2, 4, 8} : std::vector<int>{3, 5, 8};
        g.kappa_count = 6;
        g.n_min = task == SweepTask::Otoc ? 1 : 0;
        g.n_max = 15;
        g.delta = {0.1};
        g.theta0 = {0.3, 1.2};
        g.phi0 = {0.0};
        g.r = {1, 3};
        g.s = {2, 4};
        g.samples = 8;
        g.iterations = 300;
        CAPTURE(to_string(task));
        const std::string ref = csv(run_sweep_serial(g));
        CHECK(csv(run_sweep(g, 1)) == ref);
        CHECK(csv(run_sweep(g, 4)) == ref);
        CHECK(csv(run_sweep(g, 4)) == ref);
    }
}

TEST_CASE("figure data") {
    CHECK(figure_ids().size() == 15);
    const auto fig8 = plotdata("fig8", 2);
    REQUIRE(fig8.size() == 1);
    const Table& t = fig8[0].table;
    CHECK(t.rows.size() == 9);
    CHECK(std::abs(t.number(1, "ln_c_inf") - std::log(68.0 / 5)) <= kExactTol);
    const auto le3 = plotdata("le3");
    CHECK(le3[0].table.rows.size() == 3 * 101);
    CHECK(le3[0].group_column == "j2");
    const auto fig2 = plotdata("fig2")[0].table;
    for (std::size_t r = 0; r < fig2.rows.size(); ++r) {
        CHECK(std::abs(fig2.number(r, "c_inf_n2") - fig2.number(r, "c_inf_n2_numeric")) <= kOtocTol);
        CHECK(std::abs(fig2.number(r, "c_inf_n3") - fig2.number(r, "c_inf_n3_numeric")) <= kOtocTol);
    }
    CHECK(kind_of([] { plotdata("fig99"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("every figure produces data") {
    for (const auto& id : figure_ids()) {
        CAPTURE(id);
        const auto files = plotdata(id);
        REQUIRE(!files.empty());
        for (const auto& f : files) {
            CHECK(!f.table.rows.empty());
            for (const auto& row : f.table.rows) REQUIRE(row.size() == f.table.columns.size());
        }
    }
}
