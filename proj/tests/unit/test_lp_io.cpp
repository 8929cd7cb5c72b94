#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "circol/bnb.hpp"
#include "circol/lp_io.hpp"
#include "circol/lp_models.hpp"
#include "helpers.hpp"

using namespace circol;
using namespace testing;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(CIRCOL_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LpModel cg_of(const IntervalRepresentation& rep, bool relax = false) {
    const ContainmentDag dag(rep);
    const CliqueMatrix cm(rep);
    return build_cg(rep, dag, cm, relax);
}

std::string lp_text(const LpModel& m) {
    std::ostringstream out;
    write_lp(out, m);
    return out.str();
}

std::string mps_text(const LpModel& m) {
    std::ostringstream out;
    write_mps(out, m);
    return out.str();
}

LpModel reparse_lp(const std::string& text) {
    std::istringstream in(text);
    return read_lp(in);
}

LpModel reparse_mps(const std::string& text) {
    std::istringstream in(text);
    return read_mps(in);
}

} // namespace

TEST_SUITE("lp_io") {

TEST_CASE("C5 model matches the golden files byte for byte") {
    const LpModel m = cg_of(c5());
    CHECK(lp_text(m) == slurp("c5_cg.lp"));
    CHECK(mps_text(m) == slurp("c5_cg.mps"));
}

TEST_CASE("LP text layout") {
    LpModel m("demo");
    const int x = m.add_variable("x", 0, 1, VarKind::Binary);
    const int y = m.add_variable("y", -kInf, 4, VarKind::Continuous);
    const int z = m.add_variable("z", 0, 10, VarKind::Integer);
    m.set_objective(Sense::Maximize, {{x, 1}, {y, -2.5}, {z, 3}}, 2);
    m.add_constraint("r1", {{x, 1}, {y, 1}}, Relation::LessEqual, 3);
    m.add_constraint("r2", {{z, 1}, {y, -1}}, Relation::GreaterEqual, -1);
    m.add_constraint("r3", {{x, 2}, {z, 1}}, Relation::Equal, 2);
    const std::string text = lp_text(m);
    CHECK(text.rfind("\\ formulation demo\n", 0) == 0);
    CHECK(text.find("Maximize\n") != std::string::npos);
    CHECK(text.find(" r1: + x + y <= 3\n") != std::string::npos);
    CHECK(text.find(" r2: + z - y >= -1\n") != std::string::npos);
    CHECK(text.find(" r3: + 2 x + z = 2\n") != std::string::npos);
    CHECK(text.find("Binaries\n x\n") != std::string::npos);
    CHECK(text.find("End\n") != std::string::npos);

    const LpModel back = reparse_lp(text);
    CHECK(back.formulation() == "demo");
    CHECK(back.sense() == Sense::Maximize);
    CHECK(back.objective_constant() == doctest::Approx(2));
    REQUIRE(back.variable_count() == 3);
    CHECK(back.variable(1).lower == -kInf);
    CHECK(back.variable(1).upper == 4);
    CHECK(back.variable(2).kind == VarKind::Integer);
    CHECK(back.variable(2).upper == 10);
    CHECK(lp_text(back) == text);
}

TEST_CASE("MPS generic names and sidecar") {
    const LpModel m = cg_of(c5());
    const std::string text = mps_text(m);
    // 7 arcs and c
    const LpModel back = reparse_mps(text);
    CHECK(back.variable_count() == 8);
    CHECK(back.constraint_count() == m.constraint_count());
    CHECK(mps_row_name(m, 0) == "R0000001");
    CHECK(mps_column_name(m, 0) == "x_0_1");

    LpModel wide("wide");
    wide.add_variable("a_very_long_name", 0, 1, VarKind::Binary);
    wide.add_variable("b", 0, 1, VarKind::Binary);
    CHECK(mps_column_name(wide, 0) == "C0000001");
    CHECK(mps_column_name(wide, 1) == "C0000002");

    const std::string side = sidecar_json(m);
    const auto doc = nlohmann::json::parse(side);
    CHECK(doc["formulation"] == "CG");
    CHECK(doc["variables"].size() == 8);
    CHECK(doc["rows"].size() == static_cast<std::size_t>(m.constraint_count()));
    const LpModel named = apply_sidecar(back, side);
    for (int j = 0; j < m.variable_count(); ++j) {
        CHECK(named.variable(j).name == m.variable(j).name);
        CHECK(named.variable(j).tag.role == m.variable(j).tag.role);
        CHECK(named.variable(j).tag.index == m.variable(j).tag.index);
    }
    CHECK(named.constraints()[0].name == m.constraints()[0].name);
    CHECK(solve_mip(named).objective == doctest::Approx(3));
}

TEST_CASE("round trip of random CG models keeps the optimum") {
    for (std::size_t k = 0; k < 20; ++k) {
        const auto rep = random_rep(91, k, 10);
        const LpModel m = cg_of(rep);
        const double want = solve_mip(m).objective;
        const LpModel via_lp = reparse_lp(lp_text(m));
        const LpModel via_mps = reparse_mps(mps_text(m));
        CHECK(via_lp.variable_count() == m.variable_count());
        CHECK(via_mps.variable_count() == m.variable_count());
        CHECK(solve_mip(via_lp).objective == doctest::Approx(want).epsilon(1e-6));
        CHECK(solve_mip(via_mps).objective == doctest::Approx(want).epsilon(1e-6));
        const LpModel lr = cg_of(rep, true);
        CHECK(solve_lp(reparse_mps(mps_text(lr))).objective == doctest::Approx(solve_lp(lr).objective).epsilon(1e-6));
        // LP readers order variables by first mention, so a second pass is a fixed point
        CHECK(lp_text(reparse_lp(lp_text(via_lp))) == lp_text(via_lp));
    }
}

TEST_CASE("parse errors") {
    auto lp_code = [](const std::string& text) {
        try {
            reparse_lp(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidModel;
    };
    CHECK(lp_code("Minimize\n obj: + x\nSubject To\n r: + x >= \nEnd\n") == ErrorCode::ParseError);
    CHECK(lp_code("Subject To\n r: x >= 1\nEnd\n") == ErrorCode::ParseError);
    CHECK(lp_code("Minimize\n obj: + x\nSubject To\n r: + x >= 1\n") == ErrorCode::ParseError);

    auto mps_code = [](const std::string& text) {
        try {
            reparse_mps(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidModel;
    };
    CHECK(mps_code("NAME x\nROWS\n N  obj\nCOLUMNS\n    x  nope  1\nENDATA\n") == ErrorCode::ParseError);
    CHECK(mps_code("NAME x\nROWS\n N  obj\n L  r\nRANGES\n    RNG  r  1\nENDATA\n") == ErrorCode::ParseError);
    CHECK(mps_code("NAME x\nROWS\n Q  obj\nENDATA\n") == ErrorCode::ParseError);
}

} // TEST_SUITE
