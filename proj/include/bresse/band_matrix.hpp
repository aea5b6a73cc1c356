#pragma once

#include <cstddef>
#include <stdexcept>

#include "bresse/types.hpp"

namespace bresse {

class SingularSystem : public std::runtime_error {
public:
    explicit SingularSystem(std::size_t column)
        : std::runtime_error("banded factorization hit a zero pivot in column " +
                             std::to_string(column)) {}
};

/// General banded matrix with kl sub- and ku superdiagonals, stored
/// column-wise with kl extra rows so partial pivoting can fill in, and an
/// in-place LU factorization in the style of the classic banded solvers.
class BandMatrix {
public:
    BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const noexcept { return n_; }
    std::size_t lower_bandwidth() const noexcept { return kl_; }
    std::size_t upper_bandwidth() const noexcept { return ku_; }

    /// Entry A(i, j); reads return 0 outside the band, writes throw.
    double get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, double v);
    void add(std::size_t i, std::size_t j, double v);

    /// In-place LU with partial pivoting. Throws SingularSystem on a zero
    /// pivot. The matrix can no longer be edited afterwards.
    void factor();

    bool factored() const noexcept { return factored_; }

    /// Solves A x = b using the stored factorization.
    Vec solve(const Vec& b) const;

private:
    bool in_band(std::size_t i, std::size_t j) const noexcept;
    bool in_storage(std::size_t i, std::size_t j) const noexcept;
    double& ref(std::size_t i, std::size_t j);
    double val(std::size_t i, std::size_t j) const;

    std::size_t n_, kl_, ku_;
    std::size_t rows_;           // kl_ + ku_ + kl_ + 1 storage rows per column
    std::vector<double> ab_;     // column-major band storage
    std::vector<std::size_t> pivot_;
    bool factored_ = false;
};

}  // namespace bresse
