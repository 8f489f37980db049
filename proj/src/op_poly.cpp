#include "psq/op_poly.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace psq {

const char* to_string(Alphabet a) { return a == Alphabet::XP ? "xp" : "ladder"; }

const char* to_string(OrderTag t) {
    switch (t) {
        case OrderTag::Standard: return "standard";
        case OrderTag::Normal: return "normal";
        case OrderTag::AntiNormal: return "anti-normal";
        default: return "unordered";
    }
}

OrderTag default_order(Alphabet a) {
    return a == Alphabet::XP ? OrderTag::Standard : OrderTag::AntiNormal;
}

bool order_compatible(Alphabet a, OrderTag t) {
    if (t == OrderTag::Unordered) return true;
    if (a == Alphabet::XP) return t == OrderTag::Standard;
    return t == OrderTag::Normal || t == OrderTag::AntiNormal;
}

namespace {

void check_letters(const Word& w, Alphabet a) {
    for (char c : w) {
        bool ok = a == Alphabet::XP ? (c == 'X' || c == 'P') : (c == 'a' || c == 'd');
        if (!ok) throw std::invalid_argument("OpPoly: letter does not belong to the alphabet");
    }
}

// First adjacent pair violating the target order, or npos if canonical.
size_t first_violation(const Word& w, OrderTag target) {
    const char* bad = nullptr;
    switch (target) {
        case OrderTag::Standard: bad = "PX"; break;      // want X left of P
        case OrderTag::AntiNormal: bad = "da"; break;    // want a left of ad
        case OrderTag::Normal: bad = "ad"; break;        // want ad left of a
        default: return Word::npos;
    }
    return w.find(bad);
}

}  // namespace

OpPoly OpPoly::constant(const Scalar& c, Alphabet a) {
    OpPoly out(a);
    out.add_term("", c);
    out.order_ = default_order(a);
    return out;
}

OpPoly OpPoly::from_word(Word w, const Scalar& c, Alphabet a) {
    check_letters(w, a);
    OpPoly out(a);
    out.add_term(w, c);
    out.order_ = first_violation(w, default_order(a)) == Word::npos ? default_order(a)
                                                                    : OrderTag::Unordered;
    return out;
}

bool OpPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar OpPoly::constant_term() const {
    auto it = terms_.find("");
    return it == terms_.end() ? Scalar::zero() : it->second;
}

int OpPoly::max_word_length() const {
    size_t n = 0;
    for (const auto& [w, c] : terms_) n = std::max(n, w.size());
    return static_cast<int>(n);
}

void OpPoly::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    check_letters(w, alphabet_);
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

OpPoly& OpPoly::operator+=(const OpPoly& o) {
    if (o.alphabet_ != alphabet_) throw std::invalid_argument("OpPoly: alphabet mismatch");
    if (o.order_ != order_) order_ = OrderTag::Unordered;
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

OpPoly& OpPoly::operator-=(const OpPoly& o) {
    if (o.alphabet_ != alphabet_) throw std::invalid_argument("OpPoly: alphabet mismatch");
    if (o.order_ != order_) order_ = OrderTag::Unordered;
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

OpPoly& OpPoly::operator*=(const Scalar& s) {
    OpPoly out(alphabet_);
    out.order_ = order_;
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    *this = std::move(out);
    return *this;
}

OpPoly operator-(const OpPoly& a) {
    OpPoly out(a.alphabet());
    for (const auto& [w, c] : a.terms()) out.add_term(w, -c);
    out.order_ = a.order_;
    return out;
}

namespace {

struct CacheKey {
    Word word;
    OrderTag target;
    bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
    size_t operator()(const CacheKey& k) const {
        return std::hash<Word>{}(k.word) * 31u + static_cast<size_t>(k.target);
    }
};

// Canonical expansion of a single word, memoized. The swap rewrites are
//   PX -> XP - i hbar,   (ad a) -> (a ad) - 1,   (a ad) -> (ad a) + 1,
// each applied at the leftmost violation; every step lowers the inversion
// count of the word, so the recursion terminates.
const std::map<Word, Scalar>& canonical_word(const Word& w, OrderTag target) {
    static std::unordered_map<CacheKey, std::map<Word, Scalar>, CacheKeyHash> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);

    auto resolve = [&](const Word& word, auto&& self) -> const std::map<Word, Scalar>& {
        CacheKey key{word, target};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::map<Word, Scalar> result;
        size_t pos = first_violation(word, target);
        if (pos == Word::npos) {
            result.emplace(word, Scalar::one());
        } else {
            Word swapped = word;
            std::swap(swapped[pos], swapped[pos + 1]);
            Word shortened = word.substr(0, pos) + word.substr(pos + 2);
            Scalar remainder;
            if (target == OrderTag::Standard) remainder = -Scalar::unit_i() * Scalar::hbar();
            else if (target == OrderTag::AntiNormal) remainder = -Scalar::one();
            else remainder = Scalar::one();
            for (const auto& [sw, sc] : self(swapped, self)) {
                auto jt = result.find(sw);
                if (jt == result.end()) result.emplace(sw, sc);
                else {
                    jt->second += sc;
                    if (jt->second.is_zero()) result.erase(jt);
                }
            }
            for (const auto& [sw, sc] : self(shortened, self)) {
                Scalar c = sc * remainder;
                auto jt = result.find(sw);
                if (jt == result.end()) result.emplace(sw, c);
                else {
                    jt->second += c;
                    if (jt->second.is_zero()) result.erase(jt);
                }
            }
        }
        return cache.emplace(std::move(key), std::move(result)).first->second;
    };
    return resolve(w, resolve);
}

}  // namespace

OpPoly canonicalize(const OpPoly& a, OrderTag target) {
    if (!order_compatible(a.alphabet(), target) || target == OrderTag::Unordered)
        throw std::invalid_argument("canonicalize: order incompatible with alphabet");
    OpPoly out(a.alphabet());
    for (const auto& [w, c] : a.terms())
        for (const auto& [cw, cc] : canonical_word(w, target)) out.add_term(cw, c * cc);
    out.order_ = target;
    return out;
}

OpPoly op_mul(const OpPoly& a, const OpPoly& b) {
    if (a.alphabet() != b.alphabet()) throw std::invalid_argument("op_mul: alphabet mismatch");
    OpPoly raw(a.alphabet());
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) raw.add_term(wa + wb, ca * cb);
    return canonicalize(raw, default_order(a.alphabet()));
}

OpPoly op_pow(const OpPoly& a, int n) {
    if (n < 0) throw std::domain_error("op_pow: negative exponent");
    OpPoly acc = OpPoly::identity(a.alphabet());
    for (int k = 0; k < n; ++k) acc = op_mul(acc, a);
    return acc;
}

OpPoly change_alphabet(const OpPoly& a, Alphabet target) {
    if (a.alphabet() == target) return canonicalize(a, default_order(target));
    const Scalar inv_sqrt2 = Scalar::sqrt2(-1);
    auto substitution = [&](char letter) -> OpPoly {
        OpPoly s(target);
        if (target == Alphabet::Ladder) {
            if (letter == 'X') {
                // X = l/sqrt2 (a + ad)
                s.add_term("a", Scalar::length() * inv_sqrt2);
                s.add_term("d", Scalar::length() * inv_sqrt2);
            } else {
                // P = i hbar/(sqrt2 l) (ad - a)
                Scalar c = Scalar::unit_i() * Scalar::hbar() * Scalar::length(-1) * inv_sqrt2;
                s.add_term("d", c);
                s.add_term("a", -c);
            }
        } else {
            if (letter == 'a') {
                // a = 1/sqrt2 (X/l + i l P / hbar)
                s.add_term("X", Scalar::length(-1) * inv_sqrt2);
                s.add_term("P", Scalar::unit_i() * Scalar::length() * Scalar::hbar(-1) * inv_sqrt2);
            } else {
                s.add_term("X", Scalar::length(-1) * inv_sqrt2);
                s.add_term("P", -Scalar::unit_i() * Scalar::length() * Scalar::hbar(-1) * inv_sqrt2);
            }
        }
        return s;
    };
    OpPoly raw(target);
    for (const auto& [w, c] : a.terms()) {
        OpPoly prod = OpPoly::constant(c, target);
        for (char letter : w) {
            OpPoly next(target);
            const OpPoly sub = substitution(letter);
            for (const auto& [wp, cp] : prod.terms())
                for (const auto& [ws, cs] : sub.terms()) next.add_term(wp + ws, cp * cs);
            prod = std::move(next);
        }
        for (const auto& [wp, cp] : prod.terms()) raw.add_term(wp, cp);
    }
    return canonicalize(raw, default_order(target));
}

OpPoly commutator(const OpPoly& a, const OpPoly& b) {
    if (a.alphabet() != b.alphabet())
        throw std::invalid_argument("commutator: alphabet mismatch");
    return op_mul(a, b) - op_mul(b, a);
}

OpPoly adjoint(const OpPoly& a) {
    OpPoly raw(a.alphabet());
    for (const auto& [w, c] : a.terms()) {
        Word r(w.rbegin(), w.rend());
        if (a.alphabet() == Alphabet::Ladder)
            for (char& ch : r) ch = (ch == 'a') ? 'd' : 'a';
        raw.add_term(r, c.conj());
    }
    return canonicalize(raw, default_order(a.alphabet()));
}

bool op_equal(const OpPoly& a, const OpPoly& b) {
    OpPoly bb = a.alphabet() == b.alphabet() ? b : change_alphabet(b, a.alphabet());
    OrderTag order = default_order(a.alphabet());
    return canonicalize(a, order).terms() == canonicalize(bb, order).terms();
}

std::string OpPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Word, Scalar>> terms(terms_.begin(), terms_.end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        return a.first < b.first;
    });
    auto word_str = [&](const Word& w) {
        std::string s;
        size_t i = 0;
        while (i < w.size()) {
            size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            std::string name = w[i] == 'd' ? "ad" : std::string(1, w[i]);
            if (!s.empty()) s += "*";
            s += name;
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        return s;
    };
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms) {
        std::string word = word_str(w);
        std::string mag;
        bool neg = c.negative_form(mag, !word.empty());
        if (!neg) mag = c.to_string(!word.empty());
        std::string body;
        if (word.empty()) body = mag;
        else if (mag == "1") body = word;
        else body = mag + "*" + word;
        if (first) {
            out = neg ? "-" + body : body;
            first = false;
        } else if (neg) {
            out += " - " + body;
        } else if (!body.empty() && body[0] == '-') {
            out += " - " + body.substr(1);
        } else {
            out += " + " + body;
        }
    }
    return out;
}

}  // namespace psq
