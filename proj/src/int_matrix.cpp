#include "int_matrix.hpp"

#include <cassert>

namespace blocksieve {

int_matrix int_matrix::identity(std::size_t n) {
    int_matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bigint int_matrix::trace() const {
    bigint t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

int_matrix int_matrix::operator*(const int_matrix& rhs) const {
    assert(n_ == rhs.n_);
    int_matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < n_; ++k) {
            const bigint& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                out.at(i, j) += aik * rhs.at(k, j);
            }
        }
    }
    return out;
}

std::vector<bigint> char_poly(const int_matrix& m) {
    const std::size_t n = m.dim();
    std::vector<bigint> c(n + 1);
    c[n] = 1;
    if (n == 0) return c;

    int_matrix acc = int_matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        acc = m * acc;
        bigint coeff = -acc.trace() / bigint(k);
        assert(acc.trace() % bigint(k) == 0);
        c[n - k] = coeff;
        for (std::size_t i = 0; i < n; ++i) acc.at(i, i) += coeff;
    }
    return c;
}

} // namespace blocksieve
