#pragma once

#include <cstddef>
#include <stdexcept>

#include "bresse/fem.hpp"
#include "bresse/model.hpp"
#include "bresse/types.hpp"

namespace bresse {

class HistoryTooShort : public std::out_of_range {
public:
    HistoryTooShort(std::size_t wanted, std::size_t stored)
        : std::out_of_range("history holds " + std::to_string(stored) +
                            " snapshots but index " + std::to_string(wanted) +
                            " was requested") {}
};

/// Record of the rotation-field snapshots psi^0, psi^1, ... the memory term
/// convolves against. Snapshot m corresponds to time m * dt.
///
/// The convolution weights a snapshot psi^m with g(t_n - t_m). The printed
/// scheme starts the sum at m = 1; include_initial widens it to m = 0.
///
/// For exponential kernels an O(1)-per-step recurrence
///   R^m = psi^m + exp(-b dt) R^{m-1}
/// reproduces the weighted sum; it is maintained on append and used by the
/// *_fast variants (agreement with the direct sum is gated in tests).
class History {
public:
    History(Kernel g, double dt, bool include_initial = false);

    void append(const Vec& psi);
    std::size_t snapshots() const noexcept { return store_.size(); }
    const Vec& snapshot(std::size_t m) const;
    double dt() const noexcept { return dt_; }
    const Kernel& kernel() const noexcept { return kernel_; }
    bool include_initial() const noexcept { return include_initial_; }

    /// First snapshot index entering the sums (0 or 1).
    std::size_t first_index() const noexcept { return include_initial_ ? 0 : 1; }

    /// dt * sum_m g(t_n - t_m) psi^m over m in [first_index(), upto].
    /// Parallelized over snapshots; a serial reference is kept for testing.
    Vec weighted_sum(std::size_t n, std::size_t upto) const;
    Vec weighted_sum_serial(std::size_t n, std::size_t upto) const;

    /// Same sum via the exponential recurrence; requires upto to be the
    /// newest snapshot index and an exponential kernel.
    Vec weighted_sum_fast(std::size_t n, std::size_t upto) const;

    /// dt * sum_m g(t_n - t_m) over the same index range.
    double weight_total(std::size_t n, std::size_t upto) const;

private:
    void check(std::size_t n, std::size_t upto) const;

    Kernel kernel_;
    double dt_;
    bool include_initial_;
    std::vector<Vec> store_;
    Vec recurrence_;  // R^m for the newest snapshot (exponential kernels)
};

/// Memory load entering the rotation equation at time t_n:
///   dt * sum_m g(t_n - t_m) K psi^m,  m in [first_index(), n].
/// The stepper uses the known part (upto = n - 1) while assembling the
/// right-hand side; diagnostics use the full sum.
Vec convolution_load(const History& hist, const TriDiag& K, std::size_t n, std::size_t upto);
Vec convolution_load_serial(const History& hist, const TriDiag& K, std::size_t n,
                            std::size_t upto);

/// Quadratic history functional at time t_n:
///   dt * sum_m g(t_n - t_m) (psi_n - psi^m)^T K (psi_n - psi^m),
/// the squared-gradient distance between the current rotation and its past.
/// Parallelized over snapshots; serial reference kept for testing.
double history_functional(const History& hist, const TriDiag& K, const Vec& psi_n,
                          std::size_t n);
double history_functional_serial(const History& hist, const TriDiag& K, const Vec& psi_n,
                                 std::size_t n);

}  // namespace bresse
