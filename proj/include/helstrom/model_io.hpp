#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helstrom/family.hpp"
#include "helstrom/models.hpp"
#include "helstrom/quantum.hpp"

namespace helstrom::io {

enum class ModelKind { kPolytope, kClassical, kSquare, kQuantumQubit, kQuantumMatrix };

const char* kind_name(ModelKind kind);

// Parsed model description. Polytope-type kinds carry states as points of the
// space; quantum-qubit carries Bloch triples in `states`; quantum-matrix
// carries density matrices.
struct ModelFile {
    ModelKind kind = ModelKind::kPolytope;
    std::size_t dimension = 0;
    std::vector<Point> vertices;
    std::vector<Vec> states;
    std::vector<quantum::DensityMatrix> density_states;
    Vec priors;

    bool polytope_like() const {
        return kind == ModelKind::kPolytope || kind == ModelKind::kClassical ||
               kind == ModelKind::kSquare;
    }
};

// Parses a JSON model document. Schema violations raise ValidationError with
// the offending field path in the message.
ModelFile parse_model_text(const std::string& text);
ModelFile parse_model_file(const std::string& path);

// States, priors, and space of a polytope-type model as one instance.
DiscriminationInstance make_instance(const ModelFile& model);
// Both states of a binary quantum model as density matrices.
std::vector<quantum::DensityMatrix> quantum_states(const ModelFile& model);

struct FamilyOptions {
    std::string construct = "geometric";  // trivial | geometric | closed-form
    std::optional<Point> reference;       // geometric only
    std::optional<double> weaken_to;
    bool certify = false;
};

// Result documents as JSON text. Numbers carry 17 significant digits so the
// documents re-parse to the same values.
std::string discriminate_model(const ModelFile& model, double tolerance);
std::string family_model(const ModelFile& model, const FamilyOptions& options,
                         double tolerance);

// Re-feeds a family result document: rebuilds the recorded family against the
// echoed model, certifies with the recorded observable, and reports whether
// the fresh certificate matches the stored one under "matches_stored".
std::string recertify_result(const std::string& result_text, double tolerance);

}  // namespace helstrom::io
