#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>

#include "helstrom/errors.hpp"
#include "helstrom/model_io.hpp"
#include "helstrom/models.hpp"
#include "helstrom/repro.hpp"
#include "helstrom/svg.hpp"
#include "json.hpp"

using namespace helstrom;
using json = nlohmann::ordered_json;

namespace {

const char* kSquareModel =
    R"({"kind": "square", "states": [[0.2, 0.5], [0.7, 0.5]]})";
const char* kClassicalModel =
    R"({"kind": "classical", "dimension": 2,
        "states": [[0.7, 0.3], [0.2, 0.8]], "priors": [0.4, 0.6]})";
const char* kQubitModel =
    R"({"kind": "quantum-qubit", "states": [[1, 0, 0], [0, 1, 0]]})";

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("model parsing fills defaults") {
    auto m = io::parse_model_text(kSquareModel);
    CHECK(m.kind == io::ModelKind::kSquare);
    CHECK(m.dimension == 2);
    REQUIRE(m.priors.size() == 2);
    CHECK(m.priors[0] == 0.5);
    auto inst = io::make_instance(m);
    CHECK(inst.num_states() == 2);

    auto q = io::parse_model_text(kQubitModel);
    auto rho = io::quantum_states(q);
    REQUIRE(rho.size() == 2);
    CHECK(quantum::trace(rho[0].matrix()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schema violations carry field paths") {
    CHECK(message_of([] { io::parse_model_text("{nope"); }).find("not valid JSON") !=
          std::string::npos);
    CHECK(message_of([] {
              io::parse_model_text(R"({"kind": "torus", "states": []})");
          }).find("kind") != std::string::npos);
    CHECK(message_of([] {
              io::parse_model_text(R"({"kind": "classical", "states": [[1, 0], [0, 1]]})");
          }).find("dimension: missing") != std::string::npos);
    CHECK(message_of([] {
              io::parse_model_text(
                  R"({"kind": "square", "states": [[0.2, 0.5], [0.7]]})");
          }).find("states[1]") != std::string::npos);
    const std::string prior_msg = message_of([] {
        io::parse_model_text(
            R"({"kind": "square", "states": [[0.2, 0.5], [0.7, 0.5]],
                "priors": [0.4, 0.5]})");
    });
    CHECK(prior_msg.find("priors") != std::string::npos);
    CHECK(prior_msg.find("0.9") != std::string::npos);
    CHECK(message_of([] {
              io::parse_model_text(
                  R"({"kind": "quantum-qubit", "states": [[1, 1, 0], [0, 0, 1]]})");
          }).find("norm exceeds 1") != std::string::npos);
    CHECK(message_of([] {
              io::parse_model_text(
                  R"({"kind": "quantum-matrix", "dimension": 2, "states":
                      [[[[1,0],[0.5,0]],[[0,0],[0,0]]],
                       [[[0.5,0],[0,0]],[[0.5,0],[0.5,0]]]]})");
          }).find("states[0]") != std::string::npos);
}

TEST_CASE("discrimination documents round-trip exactly") {
    auto m = io::parse_model_text(kClassicalModel);
    const std::string text = io::discriminate_model(m, 1e-9);
    json doc = json::parse(text);
    CHECK(doc["command"] == "discriminate");
    const double closed =
        models::classical_binary_family({0.7, 0.3}, {0.2, 0.8}, 0.4, 0.6).p_success;
    // 17 significant digits: the parsed number is bitwise the computed one.
    CHECK(doc["cross_checks"]["closed_form"].get<double>() == closed);
    CHECK(doc["helstrom_bound"].get<double>() ==
          doctest::Approx(0.76).epsilon(1e-9));
    CHECK(doc["certificate"]["certified"].get<bool>());
    CHECK(doc["model"]["priors"][1].get<double>() == 0.6);

    auto sq = io::parse_model_text(kSquareModel);
    json sq_doc = json::parse(io::discriminate_model(sq, 1e-9));
    CHECK(sq_doc["helstrom_bound"].get<double>() == 0.75);
    CHECK(sq_doc["cross_checks"]["binding_axis"] == "x");
    CHECK(sq_doc["observable"].size() == 2);
}

TEST_CASE("quantum discrimination document") {
    auto m = io::parse_model_text(kQubitModel);
    json doc = json::parse(io::discriminate_model(m, 1e-9));
    CHECK(doc["helstrom_bound"].get<double>() ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(2.0) / 2.0)).epsilon(1e-12));
    CHECK(doc["cross_checks"]["generic"].get<bool>());
    CHECK(doc["certificate"]["certified"].get<bool>());
    CHECK(doc["family"]["encoding"] == "bloch");
    CHECK(doc["family"]["conjugates"].size() == 2);

    auto three = io::parse_model_text(
        R"({"kind": "quantum-qubit",
            "states": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]})");
    CHECK_THROWS_AS(io::discriminate_model(three, 1e-9), ValidationError);
}

TEST_CASE("family documents and construction routing") {
    auto m = io::parse_model_text(kSquareModel);
    io::FamilyOptions geo;
    geo.construct = "geometric";
    geo.certify = true;
    json doc = json::parse(io::family_model(m, geo, 1e-9));
    CHECK(doc["family"]["ratio"].get<double>() ==
          doctest::Approx(7.0 / 9.0).epsilon(1e-12));
    CHECK_FALSE(doc["certificate"]["certified"].get<bool>());
    CHECK(doc["validation"]["ok"].get<bool>());
    CHECK(doc["helstrom_bound"].get<double>() == doctest::Approx(0.75).epsilon(1e-9));

    io::FamilyOptions cf;
    cf.construct = "closed-form";
    cf.certify = true;
    json cf_doc = json::parse(io::family_model(m, cf, 1e-9));
    CHECK(cf_doc["family"]["ratio"].get<double>() == 0.75);
    CHECK(cf_doc["certificate"]["certified"].get<bool>());
    CHECK(cf_doc["certificate"]["method"] == "distinguishability");

    io::FamilyOptions weak;
    weak.construct = "geometric";
    weak.weaken_to = 0.9;
    json weak_doc = json::parse(io::family_model(m, weak, 1e-9));
    CHECK(weak_doc["family"]["ratio"].get<double>() == 0.9);
    CHECK(weak_doc["validation"]["ok"].get<bool>());

    io::FamilyOptions bogus;
    bogus.construct = "mystery";
    CHECK_THROWS_AS(io::family_model(m, bogus, 1e-9), ValidationError);
    io::FamilyOptions misplaced_ref;
    misplaced_ref.construct = "trivial";
    misplaced_ref.reference = Point{0.5, 0.5};
    CHECK_THROWS_AS(io::family_model(m, misplaced_ref, 1e-9), ValidationError);
}

TEST_CASE("quantum family documents") {
    auto m = io::parse_model_text(kQubitModel);
    io::FamilyOptions cf;
    cf.construct = "closed-form";
    cf.certify = true;
    json doc = json::parse(io::family_model(m, cf, 1e-9));
    CHECK(doc["certificate"]["certified"].get<bool>());
    CHECK(doc["certificate"]["method"] == "projective");
    CHECK(doc["ratio_minus_bound"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));

    io::FamilyOptions geo;
    geo.construct = "geometric";
    geo.certify = true;
    json geo_doc = json::parse(io::family_model(m, geo, 1e-9));
    CHECK(geo_doc["family"]["ratio"].get<double>() ==
          doctest::Approx(0.5 * (1.0 + std::sqrt(2.0) / 2.0)).epsilon(1e-12));
    CHECK(geo_doc["certificate"]["certified"].get<bool>());
    CHECK(geo_doc["validation"]["ok"].get<bool>());

    io::FamilyOptions trivial;
    trivial.construct = "trivial";
    CHECK_THROWS_AS(io::family_model(m, trivial, 1e-9), ValidationError);
    io::FamilyOptions weak;
    weak.construct = "closed-form";
    weak.weaken_to = 0.95;
    CHECK_THROWS_AS(io::family_model(m, weak, 1e-9), ValidationError);
}

TEST_CASE("re-fed documents reproduce their certificate status") {
    auto square = io::parse_model_text(kSquareModel);
    io::FamilyOptions cf;
    cf.construct = "closed-form";
    cf.certify = true;
    json out = json::parse(io::recertify_result(io::family_model(square, cf, 1e-9), 1e-9));
    CHECK(out["certificate"]["certified"].get<bool>());
    CHECK(out["stored_certified"].get<bool>());
    CHECK(out["matches_stored"].get<bool>());

    io::FamilyOptions geo;
    geo.construct = "geometric";
    geo.certify = true;
    json geo_out =
        json::parse(io::recertify_result(io::family_model(square, geo, 1e-9), 1e-9));
    CHECK_FALSE(geo_out["certificate"]["certified"].get<bool>());
    CHECK(geo_out["matches_stored"].get<bool>());

    auto qubit = io::parse_model_text(kQubitModel);
    json q_out =
        json::parse(io::recertify_result(io::family_model(qubit, cf, 1e-9), 1e-9));
    CHECK(q_out["certificate"]["certified"].get<bool>());
    CHECK(q_out["matches_stored"].get<bool>());

    CHECK_THROWS_AS(io::recertify_result("{}", 1e-9), ValidationError);
    // A document without a stored observable cannot be re-fed.
    io::FamilyOptions quiet;
    quiet.construct = "geometric";
    CHECK_THROWS_AS(io::recertify_result(io::family_model(square, quiet, 1e-9), 1e-9),
                    ValidationError);
}

TEST_CASE("figures are deterministic and structurally complete") {
    auto fam = models::square_binary({0.2, 0.5}, {0.7, 0.5}).family;
    const std::string fig = svg::polytope_family_figure(fam);
    CHECK(fig == svg::polytope_family_figure(fam));
    auto count = [&](const std::string& text, const std::string& needle) {
        std::size_t c = 0, pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            ++c;
            pos += needle.size();
        }
        return c;
    };
    CHECK(count(fig, "<circle") == 5);  // two states, two conjugates, reference
    CHECK(count(fig, "<line") == 2);
    CHECK(count(fig, "<polygon") == 1);
    CHECK(fig.find("ratio = 0.750000000") != std::string::npos);

    auto rho1 = quantum::bloch_to_density({1, 0, 0});
    auto rho2 = quantum::bloch_to_density({0, 1, 0});
    auto res = quantum::quantum_binary_helstrom(rho1, rho2, 0.5, 0.5);
    const std::string section = svg::qubit_section_figure({1, 0, 0}, {0, 1, 0}, res);
    CHECK(section == svg::qubit_section_figure({1, 0, 0}, {0, 1, 0}, res));
    CHECK(count(section, "<circle") == 6);  // disc outline plus five markers

    auto pure = models::square_pure_state_discrimination();
    CHECK(count(svg::polytope_family_figure(pure.family), "<circle") == 9);
}

TEST_CASE("reproduction report") {
    auto report = repro::run_repro("all", 2024);
    CHECK(report.all_pass);
    CHECK(report.rows.size() == 24);
    auto single = repro::run_repro("symmetric", 7);
    CHECK(single.rows.size() == 7);
    for (const auto& row : single.rows) CHECK(row.group == "symmetric");
    CHECK_THROWS_AS(repro::run_repro("bogus", 1), ValidationError);
    const std::string table = repro::format_table(report);
    CHECK(table.find("pass") != std::string::npos);
    CHECK(table.find("FAIL") == std::string::npos);
    CHECK(table.find("checks passed") != std::string::npos);
}
