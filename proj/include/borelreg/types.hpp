#pragma once

#include <complex>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace borelreg {

using cplx = std::complex<double>;

// Error hierarchy for the numerical pipeline.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct NotConvergent : Error { using Error::Error; };
struct DepthExceeded : Error {
    double worst_residual;
    explicit DepthExceeded(const std::string& msg, double residual)
        : Error(msg), worst_residual(residual) {}
};
struct Overflow : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Dense square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    bool all_finite() const {
        for (const cplx& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    friend bool operator==(const CMatrix& a, const CMatrix& b) {
        return a.dim_ == b.dim_ && a.a_ == b.a_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

inline CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.dim());
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] + b.data()[i];
    return r;
}

inline CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.dim());
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = a.data()[i] - b.data()[i];
    return r;
}

inline CMatrix operator*(const cplx& s, const CMatrix& a) {
    CMatrix r(a.dim());
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] = s * a.data()[i];
    return r;
}

inline CMatrix operator*(const CMatrix& a, const cplx& s) { return s * a; }

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim();
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline CMatrix adjoint(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

inline cplx trace(const CMatrix& a) {
    cplx t{};
    for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

// tr(a*b) without forming the product
inline cplx trace_product(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.dim();
    cplx t{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) t += a(i, k) * b(k, i);
    return t;
}

inline double frobenius_norm(const CMatrix& a) {
    double s = 0;
    for (const cplx& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

inline CMatrix hermitian_part(const CMatrix& a) {
    const std::size_t n = a.dim();
    CMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return r;
}

} // namespace borelreg
