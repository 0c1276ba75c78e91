#include "courant/poly.hpp"

#include <algorithm>
#include <cctype>

namespace courant {

Poly3 Poly3::constant(const Rational& c) {
    Poly3 p;
    p.add_term(Monomial3{}, c);
    return p;
}

Poly3 Poly3::variable(int idx) {
    if (idx < 0 || idx > 2) throw std::invalid_argument("poly: variable index out of range");
    Monomial3 m;
    m.e[static_cast<std::size_t>(idx)] = 1;
    return monomial(m, Rational(1));
}

Poly3 Poly3::monomial(const Monomial3& m, const Rational& c) {
    Poly3 p;
    p.add_term(m, c);
    return p;
}

unsigned Poly3::degree_in(int idx) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.e[static_cast<std::size_t>(idx)]);
    return d;
}

Rational Poly3::coeff(const Monomial3& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly3::add_term(const Monomial3& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly3 Poly3::operator-() const {
    Poly3 p;
    for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
    return p;
}

Poly3& Poly3::operator+=(const Poly3& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly3& Poly3::operator-=(const Poly3& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly3 operator*(const Poly3& a, const Poly3& b) {
    Poly3 p;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            Monomial3 m{{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}};
            p.add_term(m, ca * cb);
        }
    return p;
}

Poly3 operator*(const Rational& s, const Poly3& p) {
    Poly3 q;
    if (s.is_zero()) return q;
    for (const auto& [m, c] : p.terms_) q.terms_.emplace(m, s * c);
    return q;
}

Poly3 Poly3::pow(unsigned k) const {
    Poly3 r = constant(Rational(1));
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

Poly3 Poly3::substitute(const std::array<Poly3, 3>& images) const {
    // Cache successive powers of each image.
    std::array<std::vector<Poly3>, 3> powers;
    for (int v = 0; v < 3; ++v) powers[static_cast<std::size_t>(v)].push_back(Poly3::constant(Rational(1)));

    auto power = [&](int v, unsigned k) -> const Poly3& {
        auto& cache = powers[static_cast<std::size_t>(v)];
        while (cache.size() <= k) cache.push_back(cache.back() * images[static_cast<std::size_t>(v)]);
        return cache[k];
    };

    Poly3 result;
    for (const auto& [m, c] : terms_) {
        Poly3 term = Poly3::constant(c);
        for (int v = 0; v < 3; ++v)
            if (m.e[static_cast<std::size_t>(v)] > 0) term = term * power(v, m.e[static_cast<std::size_t>(v)]);
        result += term;
    }
    return result;
}

Rational Poly3::evaluate(const std::array<Rational, 3>& point) const {
    auto rat_pow = [](const Rational& b, unsigned k) {
        Rational r(1);
        for (unsigned i = 0; i < k; ++i) r *= b;
        return r;
    };
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t v = 0; v < 3; ++v)
            if (m.e[v] > 0) t *= rat_pow(point[v], m.e[v]);
        sum += t;
    }
    return sum;
}

Poly3 Poly3::homogeneous_component(unsigned d) const {
    Poly3 p;
    for (const auto& [m, c] : terms_)
        if (m.total() == d) p.terms_.emplace(m, c);
    return p;
}

std::optional<Poly3> exact_divide(const Poly3& p, const Poly3& d) {
    if (d.is_zero()) throw std::domain_error("poly: division by the zero polynomial");
    Poly3 rem = p, quot;
    const auto& [lm, lc] = *d.terms().begin();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = *rem.terms().begin();
        // Leading-term divisibility in the monomial order; failure ends the division.
        if (rm.e[0] < lm.e[0] || rm.e[1] < lm.e[1] || rm.e[2] < lm.e[2]) return std::nullopt;
        Monomial3 qm{{rm.e[0] - lm.e[0], rm.e[1] - lm.e[1], rm.e[2] - lm.e[2]}};
        Rational qc = rc / lc;
        quot.add_term(qm, qc);
        rem -= Poly3::monomial(qm, qc) * d;
    }
    return quot;
}

UniPoly UniPoly::constant(const Rational& c) { return from_coeffs({c}); }

UniPoly UniPoly::from_coeffs(std::vector<Rational> coeffs) {
    UniPoly p;
    p.coeffs_ = std::move(coeffs);
    p.trim();
    return p;
}

void UniPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::operator-() const {
    UniPoly p = *this;
    for (auto& c : p.coeffs_) c = -c;
    return p;
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UniPoly p;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    p.trim();
    return p;
}

UniPoly operator*(const Rational& s, UniPoly p) {
    for (auto& c : p.coeffs_) c *= s;
    p.trim();
    return p;
}

UniPoly UniPoly::mod(const UniPoly& m) const {
    if (m.is_zero()) throw std::domain_error("poly: reduction modulo the zero polynomial");
    UniPoly r = *this;
    const Rational lead = m.coeffs_.back();
    const int dm = m.degree();
    while (r.degree() >= dm) {
        std::size_t shift = static_cast<std::size_t>(r.degree() - dm);
        Rational f = r.coeffs_.back() / lead;
        for (std::size_t i = 0; i < m.coeffs_.size(); ++i)
            r.coeffs_[shift + i] -= f * m.coeffs_[i];
        r.trim();
    }
    return r;
}

Rational UniPoly::evaluate(const Rational& t) const {
    Rational r(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * t + coeffs_[i];
    return r;
}

Poly3 UniPoly::evaluate_poly(const Poly3& arg) const {
    Poly3 r;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * arg + Poly3::constant(coeffs_[i]);
    return r;
}

RatMatrix UniPoly::evaluate_matrix(const RatMatrix& J) const {
    if (J.rows() != J.cols()) throw std::invalid_argument("poly: matrix argument must be square");
    RatMatrix r(J.rows(), J.cols());
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        r = r * J;
        for (std::size_t d = 0; d < J.rows(); ++d) r.at(d, d) += coeffs_[i];
    }
    return r;
}

namespace {

// --- expression parser -----------------------------------------------------

enum class Tok { number, plus, minus, star, caret, slash, lparen, rparen, var, end };

struct Token {
    Tok kind;
    std::size_t offset;
    mpz_class value;  // number
    int var = -1;     // var
};

class Lexer {
public:
    Lexer(const std::string& text, const std::array<std::string, 3>& vars)
        : text_(text), vars_(vars) {
        advance();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::end;
            return;
        }
        char c = text_[pos_];
        switch (c) {
            case '+': tok_.kind = Tok::plus; ++pos_; return;
            case '-': tok_.kind = Tok::minus; ++pos_; return;
            case '*': tok_.kind = Tok::star; ++pos_; return;
            case '^': tok_.kind = Tok::caret; ++pos_; return;
            case '/': tok_.kind = Tok::slash; ++pos_; return;
            case '(': tok_.kind = Tok::lparen; ++pos_; return;
            case ')': tok_.kind = Tok::rparen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            tok_.kind = Tok::number;
            tok_.value = mpz_class(text_.substr(start, pos_ - start), 10);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name(1, c);
            for (int v = 0; v < 3; ++v) {
                if (!vars_[static_cast<std::size_t>(v)].empty() && vars_[static_cast<std::size_t>(v)] == name) {
                    tok_.kind = Tok::var;
                    tok_.var = v;
                    ++pos_;
                    return;
                }
            }
            throw ParseError("unknown variable '" + name + "'", pos_);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    const std::array<std::string, 3>& vars_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(Lexer& lex) : lex_(lex) {}

    Poly3 parse() {
        Poly3 p = expr();
        const Token& t = lex_.peek();
        if (t.kind != Tok::end) throw ParseError("unexpected trailing input", t.offset);
        return p;
    }

private:
    Poly3 expr() {
        bool neg = false;
        if (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus)
            neg = lex_.take().kind == Tok::minus;
        Poly3 p = term();
        if (neg) p = -p;
        while (lex_.peek().kind == Tok::plus || lex_.peek().kind == Tok::minus) {
            bool sub = lex_.take().kind == Tok::minus;
            Poly3 q = term();
            if (sub)
                p -= q;
            else
                p += q;
        }
        return p;
    }

    Poly3 term() {
        Poly3 p = factor();
        while (lex_.peek().kind == Tok::star) {
            lex_.take();
            p = p * factor();
        }
        return p;
    }

    Poly3 factor() {
        Poly3 b = base();
        if (lex_.peek().kind == Tok::caret) {
            lex_.take();
            Token t = lex_.peek();
            if (t.kind != Tok::number) throw ParseError("expected exponent after '^'", t.offset);
            lex_.take();
            if (!t.value.fits_uint_p()) throw ParseError("exponent too large", t.offset);
            b = b.pow(static_cast<unsigned>(t.value.get_ui()));
        }
        return b;
    }

    Poly3 base() {
        Token t = lex_.peek();
        switch (t.kind) {
            case Tok::number: {
                lex_.take();
                mpz_class num = t.value;
                if (lex_.peek().kind == Tok::slash) {
                    lex_.take();
                    Token d = lex_.peek();
                    if (d.kind != Tok::number) throw ParseError("expected denominator after '/'", d.offset);
                    lex_.take();
                    if (d.value == 0) throw ParseError("zero denominator", d.offset);
                    return Poly3::constant(Rational(num, d.value));
                }
                return Poly3::constant(Rational(num));
            }
            case Tok::var:
                lex_.take();
                return Poly3::variable(t.var);
            case Tok::lparen: {
                lex_.take();
                Poly3 p = expr();
                Token close = lex_.peek();
                if (close.kind != Tok::rparen) throw ParseError("expected ')'", close.offset);
                lex_.take();
                return p;
            }
            default:
                throw ParseError("expected a number, variable, or '('", t.offset);
        }
    }

    Lexer& lex_;
};

std::string format_term(const Rational& c, const std::string& mono) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (mono.empty()) return mag.str();
    if (mag == Rational(1)) return mono;
    return mag.str() + "*" + mono;
}

}  // namespace

Poly3 parse_poly3(const std::string& text, const std::array<std::string, 3>& vars) {
    Lexer lex(text, vars);
    return Parser(lex).parse();
}

UniPoly parse_unipoly(const std::string& text, const std::string& var) {
    Poly3 p = parse_poly3(text, {var, "", ""});
    std::vector<Rational> coeffs(static_cast<std::size_t>(p.degree() + 1), Rational(0));
    for (const auto& [m, c] : p.terms()) coeffs[m.e[0]] = c;
    return UniPoly::from_coeffs(std::move(coeffs));
}

std::string to_string(const Poly3& p, const std::array<std::string, 3>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::string mono;
        for (std::size_t v = 0; v < 3; ++v) {
            if (m.e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[v];
            if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
        }
        if (first) {
            out += (c.sign() < 0 ? "-" : "") + format_term(c, mono);
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + format_term(c, mono);
        }
    }
    return out;
}

std::string to_string(const UniPoly& p, const std::string& name) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        const Rational& c = p.coeffs()[i];
        if (c.is_zero()) continue;
        std::string mono;
        if (i >= 1) {
            mono = name;
            if (i > 1) mono += "^" + std::to_string(i);
        }
        if (first) {
            out += (c.sign() < 0 ? "-" : "") + format_term(c, mono);
            first = false;
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + format_term(c, mono);
        }
    }
    return out;
}

}  // namespace courant
