#include "helstrom/model_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "helstrom/errors.hpp"
#include "json.hpp"

namespace helstrom::io {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Serialization. Doubles are written with 17 significant digits so every
// value survives a parse round trip bit for bit.

void dump_value(const json& j, std::string& out, int depth);

bool is_flat(const json& j) {
    for (const auto& el : j)
        if (el.is_object() || el.is_array()) return false;
    return true;
}

void dump_number(const json& j, std::string& out) {
    if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out += buf;
    } else {
        out += j.dump();
    }
}

void indent_to(std::string& out, int depth) { out.append(2 * static_cast<std::size_t>(depth), ' '); }

void dump_array(const json& j, std::string& out, int depth) {
    if (j.empty()) {
        out += "[]";
        return;
    }
    if (is_flat(j)) {
        out += "[";
        bool first = true;
        for (const auto& el : j) {
            if (!first) out += ", ";
            first = false;
            dump_value(el, out, depth);
        }
        out += "]";
        return;
    }
    out += "[\n";
    bool first = true;
    for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        indent_to(out, depth + 1);
        dump_value(el, out, depth + 1);
    }
    out += "\n";
    indent_to(out, depth);
    out += "]";
}

void dump_object(const json& j, std::string& out, int depth) {
    if (j.empty()) {
        out += "{}";
        return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        indent_to(out, depth + 1);
        out += json(it.key()).dump();
        out += ": ";
        dump_value(it.value(), out, depth + 1);
    }
    out += "\n";
    indent_to(out, depth);
    out += "}";
}

void dump_value(const json& j, std::string& out, int depth) {
    if (j.is_object())
        dump_object(j, out, depth);
    else if (j.is_array())
        dump_array(j, out, depth);
    else if (j.is_number())
        dump_number(j, out);
    else
        out += j.dump();
}

std::string dump_document(const json& j) {
    std::string out;
    dump_value(j, out, 0);
    out += "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Parsing helpers carrying field paths into error messages.

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

std::string idx(const std::string& base, std::size_t i) {
    return base + "[" + std::to_string(i) + "]";
}

std::string key(const std::string& base, const char* k) {
    return base.empty() ? std::string(k) : base + "." + k;
}

const json* find(const json& obj, const char* k) {
    auto it = obj.find(k);
    return it == obj.end() ? nullptr : &*it;
}

const json& need(const json& obj, const std::string& path, const char* k) {
    const json* p = find(obj, k);
    if (p == nullptr) fail(key(path, k), "missing");
    return *p;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1)
        fail(path, "expected a positive integer");
    return static_cast<std::size_t>(j.get<long long>());
}

Vec as_vector(const json& j, const std::string& path, std::size_t want = 0) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    if (want != 0 && j.size() != want)
        fail(path, "expected " + std::to_string(want) + " entries, got " +
                       std::to_string(j.size()));
    Vec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_number(j[i], idx(path, i)));
    return v;
}

quantum::HermitianMatrix as_hermitian(const json& j, const std::string& path,
                                      std::size_t d) {
    if (!j.is_array() || j.size() != d)
        fail(path, "expected a " + std::to_string(d) + "x" + std::to_string(d) +
                       " grid of [re, im] pairs");
    std::vector<quantum::Complex> entries;
    entries.reserve(d * d);
    for (std::size_t r = 0; r < d; ++r) {
        const json& row = j[r];
        const std::string row_path = idx(path, r);
        if (!row.is_array() || row.size() != d)
            fail(row_path, "expected " + std::to_string(d) + " [re, im] pairs");
        for (std::size_t c = 0; c < d; ++c) {
            const json& cell = row[c];
            const std::string cell_path = idx(row_path, c);
            if (!cell.is_array() || cell.size() != 2)
                fail(cell_path, "expected an [re, im] pair");
            entries.emplace_back(as_number(cell[0], idx(cell_path, 0)),
                                 as_number(cell[1], idx(cell_path, 1)));
        }
    }
    try {
        return quantum::HermitianMatrix(d, std::move(entries));
    } catch (const ValidationError& e) {
        fail(path, e.what());
    }
}

json grid_json(const quantum::HermitianMatrix& m) {
    json grid = json::array();
    for (std::size_t r = 0; r < m.size(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.size(); ++c) {
            const auto v = m.at(r, c);
            row.push_back(json::array({v.real(), v.imag()}));
        }
        grid.push_back(std::move(row));
    }
    return grid;
}

json effects_json(const Observable& obs) {
    json arr = json::array();
    for (const auto& e : obs.effects) {
        json item;
        item["linear"] = e.linear;
        item["offset"] = e.offset;
        arr.push_back(std::move(item));
    }
    return arr;
}

Observable effects_from_json(const json& j, const std::string& path, std::size_t dim) {
    if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of effects");
    Observable obs;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& item = j[i];
        const std::string item_path = idx(path, i);
        if (!item.is_object()) fail(item_path, "expected an effect object");
        Effect e;
        e.linear = as_vector(need(item, item_path, "linear"), key(item_path, "linear"), dim);
        e.offset = as_number(need(item, item_path, "offset"), key(item_path, "offset"));
        obs.effects.push_back(std::move(e));
    }
    return obs;
}

ModelFile parse_model_json(const json& j, const std::string& root) {
    if (!j.is_object()) fail(root.empty() ? "(document)" : root, "expected an object");
    ModelFile m;

    const json& kind = need(j, root, "kind");
    if (!kind.is_string()) fail(key(root, "kind"), "expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "polytope")
        m.kind = ModelKind::kPolytope;
    else if (k == "classical")
        m.kind = ModelKind::kClassical;
    else if (k == "square")
        m.kind = ModelKind::kSquare;
    else if (k == "quantum-qubit")
        m.kind = ModelKind::kQuantumQubit;
    else if (k == "quantum-matrix")
        m.kind = ModelKind::kQuantumMatrix;
    else
        fail(key(root, "kind"),
             "unknown kind '" + k +
                 "' (polytope, classical, square, quantum-qubit, quantum-matrix)");

    switch (m.kind) {
        case ModelKind::kPolytope:
        case ModelKind::kClassical:
        case ModelKind::kQuantumMatrix:
            m.dimension = as_count(need(j, root, "dimension"), key(root, "dimension"));
            break;
        case ModelKind::kSquare:
        case ModelKind::kQuantumQubit:
            m.dimension = 2;
            if (const json* d = find(j, "dimension"))
                if (as_count(*d, key(root, "dimension")) != 2)
                    fail(key(root, "dimension"), "must be 2 for this kind");
            break;
    }
    if ((m.kind == ModelKind::kClassical || m.kind == ModelKind::kQuantumMatrix) &&
        m.dimension < 2)
        fail(key(root, "dimension"), "must be at least 2");

    if (m.kind == ModelKind::kPolytope) {
        const json& verts = need(j, root, "vertices");
        const std::string vpath = key(root, "vertices");
        if (!verts.is_array() || verts.empty()) fail(vpath, "expected a nonempty array");
        for (std::size_t i = 0; i < verts.size(); ++i)
            m.vertices.push_back(as_vector(verts[i], idx(vpath, i), m.dimension));
    }

    const json& states = need(j, root, "states");
    const std::string spath = key(root, "states");
    if (!states.is_array()) fail(spath, "expected an array");
    if (states.size() < 2) fail(spath, "at least 2 states required");
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string state_path = idx(spath, i);
        switch (m.kind) {
            case ModelKind::kPolytope:
            case ModelKind::kSquare:
                m.states.push_back(as_vector(states[i], state_path, m.dimension));
                break;
            case ModelKind::kClassical: {
                Vec s = as_vector(states[i], state_path, m.dimension);
                try {
                    models::check_classical_state(s);
                } catch (const ValidationError& e) {
                    fail(state_path, e.what());
                }
                m.states.push_back(std::move(s));
                break;
            }
            case ModelKind::kQuantumQubit: {
                Vec b = as_vector(states[i], state_path, 3);
                if (norm2(b) > 1.0 + kTolNum)
                    fail(state_path, "Bloch vector norm exceeds 1");
                m.states.push_back(std::move(b));
                break;
            }
            case ModelKind::kQuantumMatrix: {
                auto h = as_hermitian(states[i], state_path, m.dimension);
                try {
                    m.density_states.emplace_back(std::move(h));
                } catch (const ValidationError& e) {
                    fail(state_path, e.what());
                }
                break;
            }
        }
    }
    const std::size_t n =
        m.kind == ModelKind::kQuantumMatrix ? m.density_states.size() : m.states.size();

    if (const json* pj = find(j, "priors")) {
        const std::string ppath = key(root, "priors");
        m.priors = as_vector(*pj, ppath, n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (m.priors[i] <= 0.0) fail(idx(ppath, i), "priors must be positive");
            sum += m.priors[i];
        }
        if (std::abs(sum - 1.0) > kTolNum) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", sum);
            fail(ppath, std::string("must sum to 1 (sum = ") + buf + ")");
        }
    } else {
        m.priors.assign(n, 1.0 / static_cast<double>(n));
    }
    return m;
}

json model_echo(const ModelFile& m) {
    json e;
    e["kind"] = kind_name(m.kind);
    e["dimension"] = static_cast<long long>(m.dimension);
    if (m.kind == ModelKind::kPolytope) {
        json verts = json::array();
        for (const auto& v : m.vertices) verts.push_back(v);
        e["vertices"] = std::move(verts);
    }
    json states = json::array();
    if (m.kind == ModelKind::kQuantumMatrix) {
        for (const auto& rho : m.density_states) states.push_back(grid_json(rho.matrix()));
    } else {
        for (const auto& s : m.states) states.push_back(s);
    }
    e["states"] = std::move(states);
    e["priors"] = m.priors;
    return e;
}

quantum::BlochVector bloch_of(const Vec& b) { return {b[0], b[1], b[2]}; }

quantum::HermitianMatrix identity_matrix(std::size_t n) {
    quantum::HermitianMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1.0);
    return m;
}

bool uniform_priors(const Vec& priors) {
    for (double p : priors)
        if (std::abs(p - 1.0 / static_cast<double>(priors.size())) > kTolNum) return false;
    return true;
}

json family_record_points(const WeakHelstromFamily& fam) {
    json rec;
    rec["encoding"] = "point";
    rec["tilde_p"] = fam.tilde_p;
    json conj = json::array();
    for (const auto& t : fam.conjugates) conj.push_back(t);
    rec["conjugates"] = std::move(conj);
    rec["reference"] = fam.reference;
    rec["ratio"] = fam.ratio;
    return rec;
}

// Certification of a polytope-type family: the two-state shortcut first, the
// optimal measurement as fallback.
struct PolytopeCertOutcome {
    Certification cert;
    Observable observable;
    const char* method;
};

PolytopeCertOutcome certify_polytope(const WeakHelstromFamily& fam) {
    if (fam.instance.num_states() == 2) {
        auto bc = binary_certify_by_distinguishability(fam);
        if (bc.conjugates_distinguishable) {
            return {certify_optimal(fam, bc.observable), bc.observable, "distinguishability"};
        }
    }
    auto bound = helstrom_bound_lp(fam.instance);
    return {certify_optimal(fam, bound.observable), bound.observable, "observable"};
}

json certificate_json(bool requested, bool certified, double max_value,
                      const char* method) {
    json c;
    c["requested"] = requested;
    c["certified"] = certified;
    c["max_conjugate_value"] = max_value;
    c["method"] = method;
    return c;
}

// Quantum binary family data in one bundle, shared by both quantum kinds.
struct QuantumFamilyData {
    Vec tilde_p;
    quantum::DensityMatrix sigma1, sigma2;
    quantum::DensityMatrix reference;
    double ratio;
    quantum::HermitianMatrix e1, e2;  // projective pair annihilating the conjugates
};

QuantumFamilyData spectral_family_data(const std::vector<quantum::DensityMatrix>& rho,
                                       const Vec& priors) {
    auto res = quantum::quantum_binary_helstrom(rho[0], rho[1], priors[0], priors[1]);
    if (!res.generic)
        throw ValidationError(
            "no conjugate pair: the prior-weighted difference is one-sided; guessing "
            "the larger prior attains the optimum");
    auto ident = identity_matrix(rho[0].size());
    return {res.tilde_p,       *res.sigma1,   *res.sigma2, *res.reference,
            res.p_success,     res.projector, ident - res.projector};
}

json quantum_family_record(const QuantumFamilyData& d, bool as_bloch) {
    json rec;
    rec["encoding"] = as_bloch ? "bloch" : "matrix";
    rec["tilde_p"] = d.tilde_p;
    json conj = json::array();
    if (as_bloch) {
        for (const auto* s : {&d.sigma1, &d.sigma2}) {
            auto b = quantum::density_to_bloch(*s);
            conj.push_back(Vec{b.x, b.y, b.z});
        }
        auto rb = quantum::density_to_bloch(d.reference);
        rec["conjugates"] = std::move(conj);
        rec["reference"] = Vec{rb.x, rb.y, rb.z};
    } else {
        conj.push_back(grid_json(d.sigma1.matrix()));
        conj.push_back(grid_json(d.sigma2.matrix()));
        rec["conjugates"] = std::move(conj);
        rec["reference"] = grid_json(d.reference.matrix());
    }
    rec["ratio"] = d.ratio;
    return rec;
}

double annihilation_max(const QuantumFamilyData& d) {
    return std::max(quantum::trace_product(d.e1, d.sigma1.matrix()),
                    quantum::trace_product(d.e2, d.sigma2.matrix()));
}

}  // namespace

const char* kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::kPolytope: return "polytope";
        case ModelKind::kClassical: return "classical";
        case ModelKind::kSquare: return "square";
        case ModelKind::kQuantumQubit: return "quantum-qubit";
        case ModelKind::kQuantumMatrix: return "quantum-matrix";
    }
    return "?";
}

ModelFile parse_model_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ValidationError("model: not valid JSON");
    return parse_model_json(j, "");
}

ModelFile parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read model file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str());
}

DiscriminationInstance make_instance(const ModelFile& model) {
    switch (model.kind) {
        case ModelKind::kPolytope:
            return {ConvexStateSpace(model.vertices), model.states, model.priors};
        case ModelKind::kClassical:
            return {models::classical_space(model.dimension), model.states, model.priors};
        case ModelKind::kSquare:
            return {models::square_space(), model.states, model.priors};
        default:
            throw ValidationError("quantum models have no polytope instance");
    }
}

std::vector<quantum::DensityMatrix> quantum_states(const ModelFile& model) {
    if (model.kind == ModelKind::kQuantumMatrix) return model.density_states;
    if (model.kind != ModelKind::kQuantumQubit)
        throw ValidationError("not a quantum model");
    std::vector<quantum::DensityMatrix> out;
    out.reserve(model.states.size());
    for (const auto& b : model.states) out.push_back(quantum::bloch_to_density(bloch_of(b)));
    return out;
}

std::string discriminate_model(const ModelFile& model, double tolerance) {
    const auto start = Clock::now();
    json doc;
    doc["command"] = "discriminate";
    doc["model"] = model_echo(model);
    doc["tolerance"] = tolerance;

    if (model.polytope_like()) {
        auto inst = make_instance(model);
        auto bound = helstrom_bound_lp(inst);
        doc["helstrom_bound"] = bound.value;
        doc["observable"] = effects_json(bound.observable);

        json residuals;
        residuals["achieved_minus_bound"] =
            success_probability(inst, bound.observable) - bound.value;

        json cross;
        const std::size_t n = inst.num_states();
        if (model.kind == ModelKind::kClassical) {
            const double map = models::classical_map_oracle(inst);
            cross["best_guess_oracle"] = map;
            cross["lp_vs_best_guess"] = std::abs(bound.value - map);
            if (n == 2) {
                auto cb = models::classical_binary_family(
                    inst.state(0), inst.state(1), inst.priors()[0], inst.priors()[1]);
                cross["closed_form"] = cb.p_success;
                cross["closed_form_vs_lp"] = std::abs(cb.p_success - bound.value);
                if (cb.family.has_value()) {
                    auto outcome = certify_polytope(*cb.family);
                    doc["family"] = family_record_points(*cb.family);
                    doc["certificate"] =
                        certificate_json(true, outcome.cert.certified,
                                         outcome.cert.max_conjugate_value, outcome.method);
                }
            }
        } else if (model.kind == ModelKind::kSquare) {
            if (n == 2 && uniform_priors(inst.priors())) {
                auto sq = models::square_binary(inst.state(0), inst.state(1));
                cross["closed_form"] = sq.p_success;
                cross["closed_form_vs_lp"] = std::abs(sq.p_success - bound.value);
                cross["binding_axis"] = std::string(1, sq.binding_axis);
                auto cert = certify_optimal(sq.family, sq.observable);
                doc["family"] = family_record_points(sq.family);
                doc["certificate"] = certificate_json(true, sq.certified && cert.certified,
                                                      cert.max_conjugate_value, "observable");
            }
        } else if (n == 2) {
            const double form = binary_bound_form(inst);
            cross["single_effect_form"] = form;
            cross["single_effect_vs_lp"] = std::abs(form - bound.value);
        }
        if (!cross.empty()) doc["cross_checks"] = std::move(cross);
        doc["residuals"] = std::move(residuals);
    } else {
        auto rho = quantum_states(model);
        if (rho.size() != 2)
            throw ValidationError(
                "quantum discrimination supports exactly 2 states; for the symmetric "
                "ensemble use the symmetric reproduction case, or embed the model as a "
                "polytope");
        auto res =
            quantum::quantum_binary_helstrom(rho[0], rho[1], model.priors[0], model.priors[1]);
        doc["helstrom_bound"] = res.p_success;
        json obs = json::array();
        obs.push_back(grid_json(res.projector));
        obs.push_back(grid_json(identity_matrix(rho[0].size()) - res.projector));
        doc["observable"] = std::move(obs);

        json cross;
        auto diff = quantum::scale(model.priors[0], rho[0].matrix()) -
                    quantum::scale(model.priors[1], rho[1].matrix());
        const double form = 0.5 * (1.0 + quantum::trace_norm(diff));
        cross["trace_norm_form"] = form;
        cross["trace_norm_vs_spectral"] = std::abs(form - res.p_success);
        cross["generic"] = res.generic;
        doc["cross_checks"] = std::move(cross);

        json residuals;
        residuals["mixture_residual"] = res.mixture_residual;
        residuals["success_residual"] = res.success_residual;
        doc["residuals"] = std::move(residuals);

        if (res.generic) {
            QuantumFamilyData data = spectral_family_data(rho, model.priors);
            doc["family"] =
                quantum_family_record(data, model.kind == ModelKind::kQuantumQubit);
            const double maxv = annihilation_max(data);
            doc["certificate"] =
                certificate_json(true, maxv <= tolerance, maxv, "projective");
        }
    }
    doc["wall_time_ms"] = elapsed_ms(start);
    return dump_document(doc);
}

std::string family_model(const ModelFile& model, const FamilyOptions& options,
                         double tolerance) {
    const auto start = Clock::now();
    json doc;
    doc["command"] = "family";
    doc["model"] = model_echo(model);
    doc["construct"] = options.construct;
    doc["tolerance"] = tolerance;

    const bool known_construct = options.construct == "trivial" ||
                                 options.construct == "geometric" ||
                                 options.construct == "closed-form";
    if (!known_construct)
        throw ValidationError("unknown construction '" + options.construct +
                              "' (trivial, geometric, closed-form)");
    if (options.reference.has_value() && options.construct != "geometric")
        throw ValidationError("a custom reference applies to the geometric construction only");

    if (model.polytope_like()) {
        auto inst = make_instance(model);
        std::optional<WeakHelstromFamily> fam;
        if (options.construct == "trivial") {
            fam = trivial_family(inst);
        } else if (options.construct == "geometric") {
            fam = geometric_family(inst, options.reference);
        } else {
            if (model.kind == ModelKind::kClassical && inst.num_states() == 2) {
                auto cb = models::classical_binary_family(
                    inst.state(0), inst.state(1), inst.priors()[0], inst.priors()[1]);
                if (!cb.family.has_value())
                    throw ValidationError(
                        "no closed-form family: the prior-weighted difference is "
                        "one-sided; guessing the larger prior attains the optimum");
                fam = std::move(*cb.family);
            } else if (model.kind == ModelKind::kSquare && inst.num_states() == 2 &&
                       uniform_priors(inst.priors())) {
                fam = models::square_binary(inst.state(0), inst.state(1)).family;
            } else {
                throw ValidationError(
                    "closed-form construction covers classical and square models with 2 "
                    "states (square with uniform priors)");
            }
        }
        if (options.weaken_to.has_value()) fam = weaken(*fam, *options.weaken_to);

        auto report = validate(*fam);
        doc["family"] = family_record_points(*fam);
        json vj;
        vj["ratio_residual"] = report.ratio_residual;
        vj["mixture_residual"] = report.mixture_residual;
        vj["ok"] = report.ok();
        doc["validation"] = std::move(vj);

        const double bound = helstrom_bound_lp(inst).value;
        doc["helstrom_bound"] = bound;
        doc["ratio_minus_bound"] = fam->ratio - bound;

        if (options.certify) {
            auto outcome = certify_polytope(*fam);
            doc["certificate"] = certificate_json(true, outcome.cert.certified,
                                                  outcome.cert.max_conjugate_value,
                                                  outcome.method);
            doc["observable"] = effects_json(outcome.observable);
        } else {
            doc["certificate"] = certificate_json(false, false, 0.0, "none");
        }
    } else {
        auto rho = quantum_states(model);
        if (rho.size() != 2)
            throw ValidationError(
                "quantum families support exactly 2 states; for the symmetric ensemble "
                "use the symmetric reproduction case, or embed the model as a polytope");
        if (options.weaken_to.has_value())
            throw ValidationError("weaken applies to polytope-type models");
        if (options.construct == "trivial")
            throw ValidationError("the trivial construction applies to polytope-type models");

        std::optional<QuantumFamilyData> data;
        if (options.construct == "geometric") {
            if (model.kind != ModelKind::kQuantumQubit)
                throw ValidationError("the geometric construction is qubit-only");
            if (!uniform_priors(model.priors))
                throw ValidationError("the geometric qubit construction needs uniform priors");
            auto qf = quantum::qubit_geometric_family(bloch_of(model.states[0]),
                                                      bloch_of(model.states[1]));
            // Projective pair along b1 - b2 annihilates both unit conjugates.
            auto e1 = quantum::bloch_to_density(qf.c2).matrix();
            auto e2 = quantum::bloch_to_density(qf.c1).matrix();
            data = QuantumFamilyData{{0.5 / qf.ratio, 0.5 / qf.ratio},
                                     quantum::bloch_to_density(qf.c1),
                                     quantum::bloch_to_density(qf.c2),
                                     quantum::bloch_to_density(qf.reference),
                                     qf.ratio,
                                     std::move(e1),
                                     std::move(e2)};
        } else {
            data = spectral_family_data(rho, model.priors);
        }
        doc["family"] =
            quantum_family_record(*data, model.kind == ModelKind::kQuantumQubit);

        // Mixture agreement of both branches against the recorded reference.
        double mix = 0.0;
        for (int i = 0; i < 2; ++i) {
            const auto& sigma = i == 0 ? data->sigma1 : data->sigma2;
            auto mixture = quantum::scale(data->tilde_p[i], rho[i].matrix()) +
                           quantum::scale(1.0 - data->tilde_p[i], sigma.matrix());
            mix = std::max(mix, quantum::max_abs_diff(mixture, data->reference.matrix()));
        }
        json vj;
        vj["mixture_residual"] = mix;
        vj["ok"] = mix <= kTolGeom;
        doc["validation"] = std::move(vj);

        auto spectral = quantum::quantum_binary_helstrom(rho[0], rho[1], model.priors[0],
                                                         model.priors[1]);
        doc["helstrom_bound"] = spectral.p_success;
        doc["ratio_minus_bound"] = data->ratio - spectral.p_success;

        if (options.certify) {
            const double maxv = annihilation_max(*data);
            doc["certificate"] =
                certificate_json(true, maxv <= tolerance, maxv, "projective");
            json obs = json::array();
            obs.push_back(grid_json(data->e1));
            obs.push_back(grid_json(data->e2));
            doc["observable"] = std::move(obs);
        } else {
            doc["certificate"] = certificate_json(false, false, 0.0, "none");
        }
    }
    doc["wall_time_ms"] = elapsed_ms(start);
    return dump_document(doc);
}

std::string recertify_result(const std::string& result_text, double tolerance) {
    const auto start = Clock::now();
    json doc = json::parse(result_text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("result: not valid JSON");
    if (!doc.is_object()) throw ValidationError("result: expected an object");

    ModelFile model = parse_model_json(need(doc, "result", "model"), "result.model");
    const json& fam_j = need(doc, "result", "family");
    const std::string fpath = "result.family";
    const json& cert_j = need(doc, "result", "certificate");
    if (!cert_j.is_object() || !find(cert_j, "certified") ||
        !need(cert_j, "result.certificate", "certified").is_boolean())
        fail("result.certificate", "expected an object with a boolean 'certified'");
    const bool stored_certified = cert_j["certified"].get<bool>();
    const json& obs_j = need(doc, "result", "observable");

    const std::string encoding =
        need(fam_j, fpath, "encoding").is_string()
            ? fam_j["encoding"].get<std::string>()
            : throw ValidationError("result.family.encoding: expected a string");
    Vec tilde_p = as_vector(need(fam_j, fpath, "tilde_p"), key(fpath, "tilde_p"));
    const json& conj_j = need(fam_j, fpath, "conjugates");
    if (!conj_j.is_array()) fail(key(fpath, "conjugates"), "expected an array");
    const double ratio = as_number(need(fam_j, fpath, "ratio"), key(fpath, "ratio"));

    json out;
    out["command"] = "recertify";
    out["tolerance"] = tolerance;

    bool certified;
    double max_value;
    if (encoding == "point") {
        auto inst = make_instance(model);
        std::vector<Point> conjugates;
        for (std::size_t i = 0; i < conj_j.size(); ++i)
            conjugates.push_back(
                as_vector(conj_j[i], idx(key(fpath, "conjugates"), i), model.dimension));
        Point reference =
            as_vector(need(fam_j, fpath, "reference"), key(fpath, "reference"),
                      model.dimension);
        auto fam = make_family(std::move(inst), std::move(tilde_p), std::move(conjugates),
                               std::move(reference));
        if (std::abs(fam.ratio - ratio) > kTolNum)
            fail(key(fpath, "ratio"), "inconsistent with priors and tilde_p");
        auto obs = effects_from_json(obs_j, "result.observable", model.dimension);
        validate_observable(fam.instance.space(), obs, 1e-7);
        auto cert = certify_optimal(fam, obs);
        certified = cert.certified;
        max_value = cert.max_conjugate_value;
    } else if (encoding == "bloch" || encoding == "matrix") {
        auto rho = quantum_states(model);
        if (rho.size() != 2 || conj_j.size() != 2 || tilde_p.size() != 2)
            fail(fpath, "quantum records carry exactly 2 states and conjugates");
        const std::size_t d = rho[0].size();
        std::vector<quantum::DensityMatrix> sigma;
        for (std::size_t i = 0; i < 2; ++i) {
            const std::string cpath = idx(key(fpath, "conjugates"), i);
            try {
                if (encoding == "bloch") {
                    Vec b = as_vector(conj_j[i], cpath, 3);
                    sigma.push_back(quantum::bloch_to_density(bloch_of(b)));
                } else {
                    sigma.emplace_back(as_hermitian(conj_j[i], cpath, d));
                }
            } catch (const ValidationError& e) {
                fail(cpath, e.what());
            }
        }
        if (!obs_j.is_array() || obs_j.size() != 2)
            fail("result.observable", "expected 2 effect grids");
        auto e1 = as_hermitian(obs_j[0], "result.observable[0]", d);
        auto e2 = as_hermitian(obs_j[1], "result.observable[1]", d);
        max_value = std::max(quantum::trace_product(e1, sigma[0].matrix()),
                             quantum::trace_product(e2, sigma[1].matrix()));
        certified = max_value <= tolerance;
        for (std::size_t i = 0; i < 2; ++i)
            if (std::abs(model.priors[i] - ratio * tilde_p[i]) > kTolNum)
                fail(key(fpath, "ratio"), "inconsistent with priors and tilde_p");
    } else {
        fail(key(fpath, "encoding"), "unknown encoding '" + encoding + "'");
        return "";  // unreachable
    }

    out["certificate"] = certificate_json(true, certified, max_value, "stored-observable");
    out["stored_certified"] = stored_certified;
    out["matches_stored"] = certified == stored_certified;
    out["ratio"] = ratio;
    out["wall_time_ms"] = elapsed_ms(start);
    return dump_document(out);
}

}  // namespace helstrom::io
