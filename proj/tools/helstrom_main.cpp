#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "helstrom/errors.hpp"
#include "helstrom/model_io.hpp"
#include "helstrom/models.hpp"
#include "helstrom/repro.hpp"
#include "helstrom/svg.hpp"

namespace {

using namespace helstrom;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw NumericalError("cannot write '" + path + "'");
    out << text;
    out.flush();
    if (!out.good()) throw NumericalError("failed while writing '" + path + "'");
}

int run_discriminate(const std::string& model_path, double tolerance) {
    auto model = io::parse_model_file(model_path);
    std::fputs(io::discriminate_model(model, tolerance).c_str(), stdout);
    return 0;
}

int run_family(const std::string& model_path, const std::string& from_result,
               const io::FamilyOptions& options, double tolerance) {
    if (!from_result.empty()) {
        if (!model_path.empty())
            throw ValidationError("give either a model file or --from-result, not both");
        std::fputs(io::recertify_result(read_text_file(from_result), tolerance).c_str(),
                   stdout);
        return 0;
    }
    if (model_path.empty()) throw ValidationError("a model file is required");
    auto model = io::parse_model_file(model_path);
    std::fputs(io::family_model(model, options, tolerance).c_str(), stdout);
    return 0;
}

int run_repro(const std::string& which, std::uint64_t seed) {
    auto report = repro::run_repro(which, seed);
    std::fputs(repro::format_table(report).c_str(), stdout);
    return report.all_pass ? 0 : 1;
}

std::string render_model_figure(const io::ModelFile& model) {
    if (model.polytope_like()) {
        if (model.dimension != 2)
            throw ValidationError("plot needs a 2-dimensional model or a named case");
        auto inst = io::make_instance(model);
        if (model.kind == io::ModelKind::kSquare && inst.num_states() == 2 &&
            std::abs(inst.priors()[0] - 0.5) <= kTolNum) {
            auto sq = models::square_binary(inst.state(0), inst.state(1));
            return svg::polytope_family_figure(sq.family);
        }
        return svg::polytope_family_figure(geometric_family(inst));
    }
    if (model.kind != io::ModelKind::kQuantumQubit)
        throw ValidationError("plot needs a 2-dimensional model or a named case");
    auto rho = io::quantum_states(model);
    if (rho.size() != 2) throw ValidationError("qubit sections need exactly 2 states");
    auto res = quantum::quantum_binary_helstrom(rho[0], rho[1], model.priors[0],
                                                model.priors[1]);
    return svg::qubit_section_figure({model.states[0][0], model.states[0][1],
                                      model.states[0][2]},
                                     {model.states[1][0], model.states[1][1],
                                      model.states[1][2]},
                                     res);
}

int run_plot(const std::string& model_path, const std::string& case_name,
             const std::string& out_path) {
    std::string figure;
    if (!case_name.empty()) {
        if (!model_path.empty())
            throw ValidationError("give either a model file or --case, not both");
        if (case_name == "square-binary") {
            figure = svg::polytope_family_figure(
                models::square_binary({0.2, 0.5}, {0.7, 0.5}).family);
        } else if (case_name == "square-pure") {
            figure =
                svg::polytope_family_figure(models::square_pure_state_discrimination().family);
        } else {
            throw ValidationError("unknown plot case '" + case_name +
                                  "' (square-binary, square-pure)");
        }
    } else {
        if (model_path.empty())
            throw ValidationError("a model file or --case is required");
        figure = render_model_figure(io::parse_model_file(model_path));
    }
    write_text_file(out_path, figure);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Optimal state discrimination: Helstrom bounds, weak Helstrom families, "
        "certificates, and construction figures"};
    app.require_subcommand(1);

    double tolerance = 1e-9;
    std::string model_path, from_result, repro_case = "all", plot_case, out_path;
    std::uint64_t seed = 2024;
    io::FamilyOptions options;
    std::vector<double> reference_values;
    double weaken_to = 0.0;

    auto* discriminate =
        app.add_subcommand("discriminate", "Optimal success probability for a model");
    discriminate->add_option("model", model_path, "Model file (JSON)")->required();
    discriminate->add_option("--tolerance", tolerance, "Certification tolerance")
        ->capture_default_str();

    auto* family = app.add_subcommand(
        "family", "Construct, weaken, and certify a weak Helstrom family");
    family->add_option("model", model_path, "Model file (JSON)");
    family->add_option("--construct", options.construct,
                       "Construction: trivial, geometric, closed-form")
        ->capture_default_str();
    family->add_option("--reference", reference_values,
                       "Reference state for the geometric construction (comma separated)")
        ->delimiter(',');
    auto* weaken_opt =
        family->add_option("--weaken", weaken_to, "Weaken the family to this ratio");
    family->add_flag("--certify", options.certify,
                     "Certify optimality of the family's ratio");
    family->add_option("--from-result", from_result,
                       "Re-feed a result document: rebuild its family and re-run its "
                       "certificate (construction flags are ignored)");
    family->add_option("--tolerance", tolerance, "Certification tolerance")
        ->capture_default_str();

    auto* repro_cmd = app.add_subcommand(
        "repro", "Rerun the closed-form cross-checks and print the comparison table");
    repro_cmd->add_option("--case", repro_case,
                          "qubit-binary, symmetric, square-binary, square-pure, "
                          "classical-binary, or all")
        ->capture_default_str();
    repro_cmd->add_option("--seed", seed, "Seed for the randomized comparisons")
        ->capture_default_str();

    auto* plot = app.add_subcommand("plot", "Render a construction diagram (SVG)");
    plot->add_option("model", model_path, "Model file (JSON)");
    plot->add_option("--case", plot_case, "Named construction: square-binary, square-pure");
    plot->add_option("--out", out_path, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (discriminate->parsed()) return run_discriminate(model_path, tolerance);
        if (family->parsed()) {
            if (weaken_opt->count() > 0) options.weaken_to = weaken_to;
            if (!reference_values.empty()) options.reference = reference_values;
            return run_family(model_path, from_result, options, tolerance);
        }
        if (repro_cmd->parsed()) return run_repro(repro_case, seed);
        if (plot->parsed()) return run_plot(model_path, plot_case, out_path);
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    }
    return 0;
}
