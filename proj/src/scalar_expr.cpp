#include "courant/scalar_expr.hpp"

#include <algorithm>

namespace courant {

DerivationAlgebra::DerivationAlgebra(int derivations, int depth_bound,
                                     const std::map<std::array<int, 3>, Rational>& entries)
    : derivations_(derivations), depth_bound_(depth_bound) {
    if (derivations < 0) throw std::invalid_argument("derivations: negative count");
    set_depth_bound(depth_bound);
    for (const auto& [key, value] : entries) {
        auto [a, b, c] = key;
        if (a < 1 || a > derivations || b < 1 || b > derivations || c < 1 || c > derivations)
            throw std::invalid_argument("derivations: commutator index out of range");
        if (a == b && !value.is_zero())
            throw std::invalid_argument("derivations: nonzero commutator of equal indices");
        if (value.is_zero()) continue;
        auto put = [&](std::array<int, 3> k, const Rational& v) {
            auto [it, inserted] = eps_.emplace(k, v);
            if (!inserted && it->second != v)
                throw std::invalid_argument("derivations: conflicting commutator entries");
        };
        put({a, b, c}, value);
        put({b, a, c}, -value);
    }
}

void DerivationAlgebra::set_depth_bound(int bound) {
    if (bound < 1) throw std::invalid_argument("derivations: depth bound must be >= 1");
    depth_bound_ = bound;
}

Rational DerivationAlgebra::eps(int a, int b, int c) const {
    auto it = eps_.find({a, b, c});
    return it == eps_.end() ? Rational(0) : it->second;
}

bool DerivationAlgebra::jacobi_holds() const {
    const int n = derivations_;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                for (int p = 1; p <= n; ++p) {
                    Rational sum(0);
                    for (int m = 1; m <= n; ++m) {
                        sum += eps(i, j, m) * eps(m, k, p);
                        sum += eps(j, k, m) * eps(m, i, p);
                        sum += eps(k, i, m) * eps(m, j, p);
                    }
                    if (!sum.is_zero()) return false;
                }
    return true;
}

ScalarExpr ScalarExpr::constant(const Rational& c) {
    ScalarExpr e;
    e.add_term({}, c);
    return e;
}

ScalarExpr ScalarExpr::symbol(const std::string& name) {
    return atom(Atom{name, {}});
}

ScalarExpr ScalarExpr::atom(const Atom& a) {
    ScalarExpr e;
    e.add_term({a}, Rational(1));
    return e;
}

Rational ScalarExpr::coeff(const AtomProduct& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void ScalarExpr::add_term(const AtomProduct& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr e;
    for (const auto& [m, c] : terms_) e.terms_.emplace(m, -c);
    return e;
}

ScalarExpr& ScalarExpr::operator+=(const ScalarExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ScalarExpr& ScalarExpr::operator-=(const ScalarExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            AtomProduct m;
            m.reserve(ma.size() + mb.size());
            std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
            p.add_term(m, ca * cb);
        }
    return p;
}

ScalarExpr operator*(const Rational& s, const ScalarExpr& e) {
    ScalarExpr p;
    if (s.is_zero()) return p;
    for (const auto& [m, c] : e.terms_) p.terms_.emplace(m, s * c);
    return p;
}

void ScalarExpr::collect_symbols(std::set<std::string>& out) const {
    for (const auto& [m, c] : terms_)
        for (const Atom& a : m) out.insert(a.symbol);
}

namespace {

/// Rewrites a word into a combination of non-decreasing words.
/// word(..., p, q, ...) with p > q equals word(..., q, p, ...) plus
/// sum_c eps_{qp}^c word(..., c, ...), by the commutator relation.
void normalize_word(const DerivationWord& w, const Rational& coeff,
                    const DerivationAlgebra& alg,
                    std::map<DerivationWord, Rational>& out) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (w[i] <= w[i + 1]) continue;
        const int p = w[i], q = w[i + 1];

        DerivationWord swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        normalize_word(swapped, coeff, alg, out);

        for (int c = 1; c <= alg.derivations(); ++c) {
            Rational e = alg.eps(q, p, c);
            if (e.is_zero()) continue;
            DerivationWord shorter;
            shorter.reserve(w.size() - 1);
            shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            shorter.push_back(c);
            shorter.insert(shorter.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
            normalize_word(shorter, coeff * e, alg, out);
        }
        return;
    }
    auto [it, inserted] = out.emplace(w, coeff);
    if (!inserted) it->second += coeff;
}

/// D_a applied to a single atom.
ScalarExpr derive_atom(const Atom& atom, int a, const DerivationAlgebra& alg) {
    if (a < 1 || a > alg.derivations())
        throw std::invalid_argument("derivations: index out of range");
    DerivationWord w = atom.word;
    w.push_back(a);  // outermost position
    if (static_cast<int>(w.size()) > alg.depth_bound()) throw DepthExceededError(alg.depth_bound());

    std::map<DerivationWord, Rational> normalized;
    normalize_word(w, Rational(1), alg, normalized);

    ScalarExpr result;
    for (const auto& [word, c] : normalized) result.add_term({Atom{atom.symbol, word}}, c);
    return result;
}

}  // namespace

ScalarExpr apply_derivation(const ScalarExpr& expr, int a, const DerivationAlgebra& alg) {
    ScalarExpr result;
    for (const auto& [mono, c] : expr.terms()) {
        // Leibniz rule across the atom product.
        for (std::size_t pos = 0; pos < mono.size(); ++pos) {
            ScalarExpr derived = derive_atom(mono[pos], a, alg);
            AtomProduct rest;
            rest.reserve(mono.size() - 1);
            rest.insert(rest.end(), mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(pos));
            rest.insert(rest.end(), mono.begin() + static_cast<std::ptrdiff_t>(pos) + 1, mono.end());

            ScalarExpr rest_expr;
            rest_expr.add_term(rest, c);
            result += derived * rest_expr;
        }
    }
    return result;
}

namespace {

// --- scalar expression parser ------------------------------------------

struct ScalarParseError : std::runtime_error {
    explicit ScalarParseError(const std::string& msg, std::size_t off)
        : std::runtime_error("scalar: " + msg + " (byte " + std::to_string(off) + ")") {}
};

enum class STok { number, plus, minus, star, slash, lparen, rparen, deriv, ident, end };

struct SToken {
    STok kind;
    std::size_t offset = 0;
    std::string text;  // ident
    long value = 0;    // number or derivation index
};

class ScalarLexer {
public:
    explicit ScalarLexer(const std::string& text) : text_(text) { advance(); }

    const SToken& peek() const { return tok_; }
    SToken take() {
        SToken t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_ = SToken{};
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = STok::end;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': tok_.kind = STok::plus; ++pos_; return;
            case '-': tok_.kind = STok::minus; ++pos_; return;
            case '*': tok_.kind = STok::star; ++pos_; return;
            case '/': tok_.kind = STok::slash; ++pos_; return;
            case '(': tok_.kind = STok::lparen; ++pos_; return;
            case ')': tok_.kind = STok::rparen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            tok_.kind = STok::number;
            tok_.value = std::stol(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            // "D" followed by digits is a derivation token; anything else
            // alphanumeric is a symbol name.
            if (c == 'D' && pos_ + 1 < text_.size() &&
                std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                std::size_t start = ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                tok_.kind = STok::deriv;
                tok_.value = std::stol(text_.substr(start, pos_ - start));
                return;
            }
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            tok_.kind = STok::ident;
            tok_.text = text_.substr(start, pos_ - start);
            return;
        }
        throw ScalarParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    SToken tok_;
};

class ScalarParser {
public:
    ScalarParser(ScalarLexer& lex, const DerivationAlgebra& alg) : lex_(lex), alg_(alg) {}

    ScalarExpr parse() {
        ScalarExpr e = expr();
        const SToken& t = lex_.peek();
        if (t.kind != STok::end) throw ScalarParseError("unexpected trailing input", t.offset);
        return e;
    }

private:
    ScalarExpr expr() {
        bool neg = false;
        if (lex_.peek().kind == STok::plus || lex_.peek().kind == STok::minus)
            neg = lex_.take().kind == STok::minus;
        ScalarExpr e = term();
        if (neg) e = -e;
        while (lex_.peek().kind == STok::plus || lex_.peek().kind == STok::minus) {
            bool sub = lex_.take().kind == STok::minus;
            ScalarExpr t = term();
            if (sub)
                e -= t;
            else
                e += t;
        }
        return e;
    }

    ScalarExpr term() {
        ScalarExpr e = factor();
        while (lex_.peek().kind == STok::star) {
            lex_.take();
            e = e * factor();
        }
        return e;
    }

    ScalarExpr factor() {
        const SToken& t = lex_.peek();
        if (t.kind == STok::number) {
            SToken num = lex_.take();
            if (lex_.peek().kind == STok::slash) {
                lex_.take();
                SToken den = lex_.peek();
                if (den.kind != STok::number)
                    throw ScalarParseError("expected denominator after '/'", den.offset);
                lex_.take();
                if (den.value == 0) throw ScalarParseError("zero denominator", den.offset);
                return ScalarExpr::constant(Rational(num.value, den.value));
            }
            return ScalarExpr::constant(Rational(num.value));
        }
        return atom_expr();
    }

    ScalarExpr atom_expr() {
        const SToken& t = lex_.peek();
        if (t.kind == STok::ident) {
            return ScalarExpr::symbol(lex_.take().text);
        }
        if (t.kind == STok::deriv) {
            SToken d = lex_.take();
            if (d.value < 1 || d.value > alg_.derivations())
                throw ScalarParseError("derivation index out of range", d.offset);
            ScalarExpr inner;
            if (lex_.peek().kind == STok::lparen) {
                lex_.take();
                inner = atom_expr();
                const SToken& close = lex_.peek();
                if (close.kind != STok::rparen) throw ScalarParseError("expected ')'", close.offset);
                lex_.take();
            } else {
                inner = atom_expr();
            }
            return apply_derivation(inner, static_cast<int>(d.value), alg_);
        }
        throw ScalarParseError("expected a symbol or derivation", t.offset);
    }

    ScalarLexer& lex_;
    const DerivationAlgebra& alg_;
};

}  // namespace

ScalarExpr parse_scalar(const std::string& text, const DerivationAlgebra& alg) {
    ScalarLexer lex(text);
    return ScalarParser(lex, alg).parse();
}

std::string to_string(const Atom& a, bool pretty) {
    std::string out;
    // Stored application order; outermost derivation prints first.
    for (std::size_t i = a.word.size(); i-- > 0;) {
        out += "D" + std::to_string(a.word[i]);
        out += pretty ? "(" : " ";
    }
    out += a.symbol;
    if (pretty) out += std::string(a.word.size(), ')');
    return out;
}

std::string to_string(const ScalarExpr& e, bool pretty) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : e.terms()) {
        Rational mag = c.sign() < 0 ? -c : c;
        std::string body;
        for (const Atom& a : mono) {
            if (!body.empty()) body += "*";
            body += to_string(a, pretty);
        }
        std::string piece;
        if (body.empty())
            piece = mag.str();
        else if (mag == Rational(1))
            piece = body;
        else
            piece = mag.str() + "*" + body;
        if (first) {
            out += (c.sign() < 0 ? "-" : "") + piece;
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + piece;
        }
    }
    return out;
}

}  // namespace courant
