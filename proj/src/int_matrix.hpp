#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace blocksieve {

using bigint = boost::multiprecision::cpp_int;

// Dense square matrix over arbitrary-precision integers. Everything that
// feeds a verdict (spectra, walk counts) runs through this type; no floating
// point is involved anywhere near a NOT-QI decision.
class int_matrix {
public:
    int_matrix() = default;
    explicit int_matrix(std::size_t n) : n_(n), a_(n * n) {}

    static int_matrix identity(std::size_t n);

    std::size_t dim() const { return n_; }
    bigint& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const bigint& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    bigint trace() const;
    int_matrix operator*(const int_matrix& rhs) const;

    friend bool operator==(const int_matrix&, const int_matrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<bigint> a_;
};

// Coefficients of det(xI - m), constant term first, size dim()+1.
// Faddeev-LeVerrier over the integers; every division is exact.
std::vector<bigint> char_poly(const int_matrix& m);

} // namespace blocksieve
