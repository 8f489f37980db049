#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "psq/rational.hpp"

namespace psq {

enum class FieldKind { RationalField, FloatField };

/// Finite set of rays. Rational vectors are stored as canonical integer
/// representatives (common denominator cleared, gcd divided out, first
/// nonzero component positive), so orthogonality and ray identity are exact.
/// Float vectors are stored unit-normalized with the same sign convention.
struct VectorSet {
    int dim = 0;
    FieldKind field = FieldKind::RationalField;
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> rational_vectors;
    std::vector<Eigen::VectorXd> float_vectors;
    std::vector<double> scales;         // recorded input norm per kept ray
    std::vector<std::string> warnings;  // e.g. dropped duplicate rays

    int size() const {
        return static_cast<int>(field == FieldKind::RationalField ? rational_vectors.size()
                                                                  : float_vectors.size());
    }
};

struct LoadOptions {
    double unit_tol = 1e-6;        // float mode: admissible deviation from unit norm
    bool normalize_floats = false; // accept arbitrarily scaled float input
};

/// Reads the JSON schema
///   { "dim": int, "field": "rational"|"float",
///     "vectors": [ { "label": str, "components": [ "n/m" | number, ... ] } ] }
/// Rational components are strings "n" or "n/m" (or plain integers).
/// Duplicate and antiparallel rays are merged with a warning.
VectorSet load_vector_set(const std::string& path, const LoadOptions& options = {});

/// Same validation for already-parsed JSON text (used by tests).
VectorSet parse_vector_set(const std::string& json_text, const LoadOptions& options = {});

/// Collection of complete orthonormal bases, as sorted index sets into the
/// vector list, listed in lexicographic order.
struct BasisList {
    int dim = 0;
    int vector_count = 0;
    std::vector<std::vector<int>> bases;
};

/// Scans all size-dim subsets of mutually orthogonal rays. `tol` bounds the
/// admissible |dot| for float vectors and is ignored for rational input,
/// where orthogonality is decided exactly.
BasisList find_bases(const VectorSet& vs, double tol = 1e-9);

/// Value assignment, one 0/1 entry per vector.
struct Valuation {
    std::vector<int> values;
};

/// Search outcome. When colorable the witness satisfies every constraint
/// (re-verified before returning); when not, `contradiction_core` holds a
/// minimal sub-list of bases that is already uncolorable.
struct Verdict {
    bool colorable = false;
    std::optional<Valuation> witness;
    long nodes_explored = 0;
    std::optional<std::vector<int>> contradiction_core;
};

/// Decides whether values 0/1 can be assigned to the rays so that every
/// basis contains exactly one 1, the same value holding for a ray across all
/// bases. Deterministic backtracking over bases in order, branching on which
/// member carries the 1 (lowest index first), with unit propagation.
Verdict search_valuation(const BasisList& bl);

/// True iff every basis sums to exactly 1. Throws if the valuation does not
/// cover all vectors or contains entries outside {0,1}.
bool verify_valuation(const Valuation& v, const BasisList& bl);

}  // namespace psq
