#include "psq/kscolor.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace psq {

namespace {

using nlohmann::json;

Rational parse_rational_component(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string())
        throw std::runtime_error("vector set: " + where + ": rational component must be a string");
    std::string s = j.get<std::string>();
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw std::runtime_error("vector set: " + where + ": bad rational literal '" + s + "'");
    }
}

// Canonical integer ray representative: clear denominators, divide by the
// gcd, make the first nonzero component positive. Returns the applied scale
// (canonical = scale * input). The zero vector is rejected by the caller.
std::vector<Rational> canonical_rational_ray(std::vector<Rational> v, bool& flipped) {
    BigInt lcm = 1;
    for (const auto& c : v) lcm = boost::multiprecision::lcm(lcm, denominator(c));
    BigInt gcd = 0;
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    for (const auto& c : v) {
        BigInt value = numerator(c) * (lcm / denominator(c));
        ints.push_back(value);
        gcd = boost::multiprecision::gcd(gcd, boost::multiprecision::abs(value));
    }
    flipped = false;
    for (const auto& value : ints) {
        if (value == 0) continue;
        flipped = value < 0;
        break;
    }
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& value : ints) {
        BigInt reduced = value / gcd;
        out.emplace_back(flipped ? BigInt(-reduced) : reduced);
    }
    return out;
}

Rational rational_dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc = 0;
    for (size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
    return acc;
}

}  // namespace

VectorSet parse_vector_set(const std::string& json_text, const LoadOptions& options) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("vector set: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("field") || !j.contains("vectors"))
        throw std::runtime_error("vector set: expected object with dim, field, vectors");

    VectorSet vs;
    vs.dim = j.at("dim").get<int>();
    if (vs.dim < 2) throw std::runtime_error("vector set: dim must be at least 2");
    std::string field = j.at("field").get<std::string>();
    if (field == "rational") vs.field = FieldKind::RationalField;
    else if (field == "float") vs.field = FieldKind::FloatField;
    else throw std::runtime_error("vector set: field must be 'rational' or 'float'");

    if (!j.at("vectors").is_array() || j.at("vectors").empty())
        throw std::runtime_error("vector set: vectors must be a non-empty array");

    int index = 0;
    for (const auto& entry : j.at("vectors")) {
        std::string label = entry.contains("label") ? entry.at("label").get<std::string>()
                                                    : "v" + std::to_string(index);
        if (!entry.contains("components") || !entry.at("components").is_array() ||
            static_cast<int>(entry.at("components").size()) != vs.dim)
            throw std::runtime_error("vector set: '" + label + "': expected " +
                                     std::to_string(vs.dim) + " components");

        if (vs.field == FieldKind::RationalField) {
            std::vector<Rational> v;
            for (const auto& c : entry.at("components"))
                v.push_back(parse_rational_component(c, label));
            if (std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; }))
                throw std::runtime_error("vector set: '" + label + "' is the zero vector");
            bool flipped = false;
            std::vector<Rational> ray = canonical_rational_ray(std::move(v), flipped);
            auto dup = std::find(vs.rational_vectors.begin(), vs.rational_vectors.end(), ray);
            if (dup != vs.rational_vectors.end()) {
                size_t at = dup - vs.rational_vectors.begin();
                vs.warnings.push_back("'" + label + "' is the same ray as '" + vs.labels[at] +
                                      "'; merged");
            } else {
                double norm2 = 0.0;
                for (const auto& c : ray) norm2 += to_double(c) * to_double(c);
                vs.rational_vectors.push_back(std::move(ray));
                vs.labels.push_back(label);
                vs.scales.push_back(std::sqrt(norm2));
            }
        } else {
            Eigen::VectorXd v(vs.dim);
            int k = 0;
            for (const auto& c : entry.at("components")) {
                if (!c.is_number())
                    throw std::runtime_error("vector set: '" + label +
                                             "': float component must be a number");
                v(k++) = c.get<double>();
            }
            double norm = v.norm();
            if (norm < 1e-12)
                throw std::runtime_error("vector set: '" + label + "' is the zero vector");
            if (!options.normalize_floats && std::abs(norm - 1.0) > options.unit_tol)
                throw std::runtime_error("vector set: '" + label + "' has norm " +
                                         std::to_string(norm) + ", not a unit vector");
            v /= norm;
            for (int c = 0; c < vs.dim; ++c) {
                if (std::abs(v(c)) < 1e-12) continue;
                if (v(c) < 0) v = -v;
                break;
            }
            bool duplicate = false;
            for (size_t at = 0; at < vs.float_vectors.size(); ++at) {
                if ((vs.float_vectors[at] - v).cwiseAbs().maxCoeff() < 1e-9) {
                    vs.warnings.push_back("'" + label + "' is the same ray as '" + vs.labels[at] +
                                          "'; merged");
                    duplicate = true;
                    break;
                }
            }
            if (!duplicate) {
                vs.float_vectors.push_back(std::move(v));
                vs.labels.push_back(label);
                vs.scales.push_back(norm);
            }
        }
        ++index;
    }
    return vs;
}

VectorSet load_vector_set(const std::string& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("vector set: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_vector_set(buffer.str(), options);
}

BasisList find_bases(const VectorSet& vs, double tol) {
    if (vs.field == FieldKind::FloatField && !(tol > 0))
        throw std::invalid_argument("find_bases: tolerance must be positive");
    const int n = vs.size();
    auto orthogonal = [&](int i, int j) {
        if (vs.field == FieldKind::RationalField)
            return rational_dot(vs.rational_vectors[i], vs.rational_vectors[j]) == 0;
        return std::abs(vs.float_vectors[i].dot(vs.float_vectors[j])) <= tol;
    };
    // Pairwise table once, then depth-first extension in increasing index
    // order, which yields the bases in lexicographic order.
    std::vector<std::vector<bool>> orth(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) orth[i][j] = orth[j][i] = orthogonal(i, j);

    BasisList bl;
    bl.dim = vs.dim;
    bl.vector_count = n;
    std::vector<int> current;
    auto extend = [&](int from, auto&& self) -> void {
        if (static_cast<int>(current.size()) == vs.dim) {
            bl.bases.push_back(current);
            return;
        }
        for (int k = from; k < n; ++k) {
            bool ok = true;
            for (int m : current)
                if (!orth[m][k]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            current.push_back(k);
            self(k + 1, self);
            current.pop_back();
        }
    };
    extend(0, extend);
    return bl;
}

namespace {

// Backtracking solver state over one basis list.
struct Solver {
    const BasisList& bl;
    std::vector<std::vector<int>> membership;  // vector -> bases containing it
    std::vector<int> value;                    // -1 unset, 0, 1
    std::vector<int> trail;
    long nodes = 0;

    explicit Solver(const BasisList& b) : bl(b), value(b.vector_count, -1) {
        membership.resize(bl.vector_count);
        for (size_t bi = 0; bi < bl.bases.size(); ++bi)
            for (int v : bl.bases[bi]) {
                if (v < 0 || v >= bl.vector_count)
                    throw std::invalid_argument("search_valuation: basis index out of range");
                membership[v].push_back(static_cast<int>(bi));
            }
    }

    bool assign(int v, int val) {
        if (value[v] != -1) return value[v] == val;
        value[v] = val;
        trail.push_back(v);
        // Propagate through every basis containing v.
        for (int bi : membership[v]) {
            const auto& basis = bl.bases[bi];
            if (val == 1) {
                for (int u : basis)
                    if (u != v && !assign(u, 0)) return false;
            } else {
                int unset = -1, ones = 0, zeros = 0;
                for (int u : basis) {
                    if (value[u] == 1) ++ones;
                    else if (value[u] == 0) ++zeros;
                    else unset = u;
                }
                if (ones == 0) {
                    if (zeros == static_cast<int>(basis.size())) return false;
                    if (zeros == static_cast<int>(basis.size()) - 1 && !assign(unset, 1))
                        return false;
                }
            }
        }
        return true;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            value[trail.back()] = -1;
            trail.pop_back();
        }
    }

    bool solve(size_t basis_index) {
        while (basis_index < bl.bases.size()) {
            bool satisfied = false;
            for (int v : bl.bases[basis_index])
                if (value[v] == 1) satisfied = true;
            if (!satisfied) break;
            ++basis_index;
        }
        if (basis_index == bl.bases.size()) return true;
        for (int v : bl.bases[basis_index]) {
            if (value[v] == 0) continue;
            ++nodes;
            size_t mark = trail.size();
            if (assign(v, 1) && solve(basis_index + 1)) return true;
            undo_to(mark);
        }
        return false;
    }
};

struct SolveResult {
    bool colorable;
    Valuation witness;
    long nodes;
};

SolveResult solve_bases(const BasisList& bl) {
    Solver solver(bl);
    bool ok = solver.solve(0);
    SolveResult result{ok, Valuation{}, solver.nodes};
    if (ok) {
        result.witness.values.assign(bl.vector_count, 0);
        for (int v = 0; v < bl.vector_count; ++v)
            if (solver.value[v] == 1) result.witness.values[v] = 1;
    }
    return result;
}

}  // namespace

Verdict search_valuation(const BasisList& bl) {
    if (bl.bases.empty()) throw std::invalid_argument("search_valuation: empty basis list");
    SolveResult result = solve_bases(bl);
    Verdict verdict;
    verdict.colorable = result.colorable;
    verdict.nodes_explored = result.nodes;
    if (result.colorable) {
        if (!verify_valuation(result.witness, bl))
            throw std::logic_error("search_valuation: witness failed re-verification");
        verdict.witness = std::move(result.witness);
        return verdict;
    }
    // Best-effort minimal uncolorable sub-list: greedily drop bases whose
    // removal keeps the list uncolorable.
    std::vector<int> core(bl.bases.size());
    std::iota(core.begin(), core.end(), 0);
    for (size_t k = 0; k < core.size();) {
        BasisList reduced;
        reduced.dim = bl.dim;
        reduced.vector_count = bl.vector_count;
        for (size_t m = 0; m < core.size(); ++m)
            if (m != k) reduced.bases.push_back(bl.bases[core[m]]);
        if (!reduced.bases.empty() && !solve_bases(reduced).colorable)
            core.erase(core.begin() + k);
        else
            ++k;
    }
    verdict.contradiction_core = std::move(core);
    return verdict;
}

bool verify_valuation(const Valuation& v, const BasisList& bl) {
    if (static_cast<int>(v.values.size()) != bl.vector_count)
        throw std::invalid_argument("verify_valuation: valuation does not cover all vectors");
    for (int value : v.values)
        if (value != 0 && value != 1)
            throw std::invalid_argument("verify_valuation: values must be 0 or 1");
    for (const auto& basis : bl.bases) {
        int sum = 0;
        for (int u : basis) sum += v.values[u];
        if (sum != 1) return false;
    }
    return true;
}

}  // namespace psq
