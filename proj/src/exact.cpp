#include "courant/exact.hpp"

#include <cctype>

namespace courant {

Rational Rational::parse(const std::string& s) {
    // Accept exactly: optional sign, digits, optionally "/" and unsigned digits.
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t num_begin = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == num_begin) throw std::invalid_argument("rational: malformed literal '" + s + "'");
    if (i < s.size()) {
        if (s[i] != '/') throw std::invalid_argument("rational: malformed literal '" + s + "'");
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == den_begin || i != s.size())
            throw std::invalid_argument("rational: malformed literal '" + s + "'");
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw std::domain_error("rational: zero denominator");
    q.canonicalize();
    Rational r;
    r.v_ = q;
    return r;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if (at(r, c) != at(c, r)) return false;
    return true;
}

RatMatrix& RatMatrix::operator+=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix: shape mismatch in addition");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

RatMatrix& RatMatrix::operator-=(const RatMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("matrix: shape mismatch in subtraction");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix: shape mismatch in product");
    RatMatrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& ark = a.at(r, k);
            if (ark.is_zero()) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) p.at(r, c) += ark * b.at(k, c);
        }
    return p;
}

RatMatrix operator*(const Rational& s, RatMatrix m) {
    for (auto& x : m.a_) x *= s;
    return m;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::vector<std::size_t> rref_inplace(RatMatrix& M) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < M.cols() && row < M.rows(); ++col) {
        std::size_t sel = row;
        while (sel < M.rows() && M.at(sel, col).is_zero()) ++sel;
        if (sel == M.rows()) continue;
        if (sel != row)
            for (std::size_t c = col; c < M.cols(); ++c) std::swap(M.at(sel, c), M.at(row, c));
        Rational inv_p = Rational(1) / M.at(row, col);
        for (std::size_t c = col; c < M.cols(); ++c) M.at(row, c) *= inv_p;
        for (std::size_t r = 0; r < M.rows(); ++r) {
            if (r == row || M.at(r, col).is_zero()) continue;
            Rational f = M.at(r, col);
            for (std::size_t c = col; c < M.cols(); ++c) M.at(r, c) -= f * M.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(RatMatrix M) { return rref_inplace(M).size(); }

std::vector<RatMatrix> kernel_basis(const RatMatrix& M) {
    RatMatrix R = M;
    std::vector<std::size_t> pivots = rref_inplace(R);
    std::vector<bool> is_pivot(M.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::vector<RatMatrix> basis;
    for (std::size_t free = 0; free < M.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatMatrix v(M.cols(), 1);
        v.at(free, 0) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v.at(pivots[r], 0) = -R.at(r, free);
        // Normalize: first nonzero entry becomes 1.
        for (std::size_t i = 0; i < M.cols(); ++i) {
            if (!v.at(i, 0).is_zero()) {
                Rational inv = Rational(1) / v.at(i, 0);
                for (std::size_t j = i; j < M.cols(); ++j) v.at(j, 0) *= inv;
                break;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix inverse(const RatMatrix& M) {
    if (M.rows() != M.cols()) throw std::domain_error("matrix: inverse of non-square matrix");
    std::size_t n = M.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = M.at(r, c);
        aug.at(r, n + r) = 1;
    }
    std::vector<std::size_t> pivots = rref_inplace(aug);
    if (pivots.size() != n || pivots.back() >= n)
        throw std::domain_error("matrix: singular matrix has no inverse");
    RatMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

RatMatrix mat_pow(const RatMatrix& M, unsigned k) {
    if (M.rows() != M.cols()) throw std::invalid_argument("matrix: power of non-square matrix");
    RatMatrix result = RatMatrix::identity(M.rows());
    for (unsigned i = 0; i < k; ++i) result = result * M;
    return result;
}

}  // namespace courant
