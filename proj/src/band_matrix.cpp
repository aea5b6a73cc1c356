#include "bresse/band_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace bresse {

// Storage: entry (i, j) lives at ab_[j * rows_ + (kl_ + ku_ + i - j)].
// Before factorization only |i - j| <= kl_/ku_ is populated; pivoting can
// push fill-in up to kl_ + ku_ superdiagonals, which the extra kl_ rows hold.

BandMatrix::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), rows_(2 * kl + ku + 1), ab_(rows_ * n, 0.0), pivot_(n, 0) {
    if (n == 0) throw std::invalid_argument("BandMatrix: empty dimension");
}

bool BandMatrix::in_band(std::size_t i, std::size_t j) const noexcept {
    return (i <= j + kl_) && (j <= i + ku_) && i < n_ && j < n_;
}

bool BandMatrix::in_storage(std::size_t i, std::size_t j) const noexcept {
    return (i <= j + kl_) && (j <= i + ku_ + kl_) && i < n_ && j < n_;
}

double& BandMatrix::ref(std::size_t i, std::size_t j) {
    return ab_[j * rows_ + (kl_ + ku_ + i - j)];
}

double BandMatrix::val(std::size_t i, std::size_t j) const {
    return ab_[j * rows_ + (kl_ + ku_ + i - j)];
}

double BandMatrix::get(std::size_t i, std::size_t j) const {
    if (!factored_) return in_band(i, j) ? val(i, j) : 0.0;
    return in_storage(i, j) ? val(i, j) : 0.0;
}

void BandMatrix::set(std::size_t i, std::size_t j, double v) {
    if (factored_) throw std::logic_error("BandMatrix: edit after factor()");
    if (!in_band(i, j)) throw std::out_of_range("BandMatrix: entry outside band");
    ref(i, j) = v;
}

void BandMatrix::add(std::size_t i, std::size_t j, double v) {
    if (factored_) throw std::logic_error("BandMatrix: edit after factor()");
    if (!in_band(i, j)) throw std::out_of_range("BandMatrix: entry outside band");
    ref(i, j) += v;
}

void BandMatrix::factor() {
    if (factored_) throw std::logic_error("BandMatrix: factor() called twice");
    for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t row_end = std::min(n_ - 1, j + kl_);

        std::size_t imax = j;
        double vmax = std::abs(val(j, j));
        for (std::size_t i = j + 1; i <= row_end; ++i) {
            const double v = std::abs(val(i, j));
            if (v > vmax) {
                vmax = v;
                imax = i;
            }
        }
        if (vmax == 0.0) throw SingularSystem(j);
        pivot_[j] = imax;

        const std::size_t col_end = std::min(n_ - 1, j + ku_ + kl_);
        if (imax != j) {
            for (std::size_t c = j; c <= col_end; ++c) std::swap(ref(j, c), ref(imax, c));
        }

        const double pivot = val(j, j);
        for (std::size_t i = j + 1; i <= row_end; ++i) {
            const double m = val(i, j) / pivot;
            ref(i, j) = m;
            if (m == 0.0) continue;
            for (std::size_t c = j + 1; c <= col_end; ++c) ref(i, c) -= m * val(j, c);
        }
    }
    factored_ = true;
}

Vec BandMatrix::solve(const Vec& b) const {
    if (!factored_) throw std::logic_error("BandMatrix: solve() before factor()");
    if (b.size() != n_) throw std::invalid_argument("BandMatrix: right-hand side size");
    Vec x = b;

    for (std::size_t j = 0; j < n_; ++j) {
        if (pivot_[j] != j) std::swap(x[j], x[pivot_[j]]);
        const std::size_t row_end = std::min(n_ - 1, j + kl_);
        for (std::size_t i = j + 1; i <= row_end; ++i) x[i] -= val(i, j) * x[j];
    }
    for (std::size_t jj = n_; jj-- > 0;) {
        const std::size_t col_end = std::min(n_ - 1, jj + ku_ + kl_);
        double v = x[jj];
        for (std::size_t c = jj + 1; c <= col_end; ++c) v -= val(jj, c) * x[c];
        x[jj] = v / val(jj, jj);
    }
    return x;
}

}  // namespace bresse
