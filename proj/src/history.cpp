#include "bresse/history.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bresse {

namespace {

// Below this many scalar operations the parallel paths fall back to the
// serial loop; thread startup would dominate on the small preset meshes.
constexpr std::size_t kParallelGrain = 1 << 14;

// K-weighted squared norm of (psi_n - snapshot) using a caller-provided
// scratch buffer for the difference.
double gradient_gap(const TriDiag& K, const Vec& psi_n, const Vec& past, Vec& scratch) {
    const std::size_t len = psi_n.size();
    for (std::size_t i = 0; i < len; ++i) scratch[i] = psi_n[i] - past[i];
    double quad = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        double row = K.diag[i] * scratch[i];
        if (i > 0) row += K.lower[i - 1] * scratch[i - 1];
        if (i + 1 < len) row += K.upper[i] * scratch[i + 1];
        quad += scratch[i] * row;
    }
    return quad;
}

}  // namespace

History::History(Kernel g, double dt, bool include_initial)
    : kernel_(g), dt_(dt), include_initial_(include_initial) {
    if (!(dt > 0.0)) throw NonPositiveParameter("dt");
}

void History::append(const Vec& psi) {
    if (!store_.empty() && psi.size() != store_.front().size()) {
        throw std::invalid_argument("history snapshot size changed");
    }
    store_.push_back(psi);
    if (kernel_.family == Kernel::Family::exponential) {
        const double decay = std::exp(-kernel_.b * dt_);
        if (store_.size() == 1) {
            recurrence_ = include_initial_ ? psi : Vec(psi.size(), 0.0);
        } else {
            for (std::size_t i = 0; i < psi.size(); ++i) {
                recurrence_[i] = psi[i] + decay * recurrence_[i];
            }
        }
    }
}

const Vec& History::snapshot(std::size_t m) const {
    if (m >= store_.size()) throw HistoryTooShort(m, store_.size());
    return store_[m];
}

void History::check(std::size_t n, std::size_t upto) const {
    if (upto >= store_.size()) throw HistoryTooShort(upto, store_.size());
    if (n < upto) throw std::invalid_argument("evaluation time precedes newest snapshot");
}

Vec History::weighted_sum_serial(std::size_t n, std::size_t upto) const {
    check(n, upto);
    Vec acc(store_.front().size(), 0.0);
    for (std::size_t m = first_index(); m <= upto; ++m) {
        const double wgt = kernel_.eval(dt_ * static_cast<double>(n - m));
        const Vec& s = store_[m];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wgt * s[i];
    }
    for (double& v : acc) v *= dt_;
    return acc;
}

Vec History::weighted_sum(std::size_t n, std::size_t upto) const {
    check(n, upto);
    const std::size_t len = store_.front().size();
    const std::size_t m0 = first_index();
    const std::size_t terms = (upto >= m0) ? upto - m0 + 1 : 0;
#ifdef _OPENMP
    if (terms * len >= kParallelGrain) {
        const int nthreads = omp_get_max_threads();
        std::vector<Vec> partial(static_cast<std::size_t>(nthreads), Vec(len, 0.0));
#pragma omp parallel num_threads(nthreads)
        {
            Vec& mine = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
            for (long long m = static_cast<long long>(m0); m <= static_cast<long long>(upto);
                 ++m) {
                const double wgt =
                    kernel_.eval(dt_ * static_cast<double>(n - static_cast<std::size_t>(m)));
                const Vec& s = store_[static_cast<std::size_t>(m)];
                for (std::size_t i = 0; i < len; ++i) mine[i] += wgt * s[i];
            }
        }
        // merge in thread order: deterministic for a fixed thread count
        Vec acc(len, 0.0);
        for (const Vec& part : partial) {
            for (std::size_t i = 0; i < len; ++i) acc[i] += part[i];
        }
        for (double& v : acc) v *= dt_;
        return acc;
    }
#endif
    return weighted_sum_serial(n, upto);
}

Vec History::weighted_sum_fast(std::size_t n, std::size_t upto) const {
    check(n, upto);
    if (kernel_.family != Kernel::Family::exponential) {
        throw std::logic_error("recurrence shortcut requires an exponential kernel");
    }
    if (upto + 1 != store_.size()) {
        throw std::invalid_argument("recurrence shortcut only covers the newest snapshot");
    }
    const double shift =
        kernel_.a * std::exp(-kernel_.b * dt_ * static_cast<double>(n - upto));
    Vec acc(recurrence_.size());
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = dt_ * shift * recurrence_[i];
    return acc;
}

double History::weight_total(std::size_t n, std::size_t upto) const {
    check(n, upto);
    double total = 0.0;
    for (std::size_t m = first_index(); m <= upto; ++m) {
        total += kernel_.eval(dt_ * static_cast<double>(n - m));
    }
    return dt_ * total;
}

Vec convolution_load(const History& hist, const TriDiag& K, std::size_t n, std::size_t upto) {
    return K.apply(hist.weighted_sum(n, upto));
}

Vec convolution_load_serial(const History& hist, const TriDiag& K, std::size_t n,
                            std::size_t upto) {
    return K.apply(hist.weighted_sum_serial(n, upto));
}

double history_functional_serial(const History& hist, const TriDiag& K, const Vec& psi_n,
                                 std::size_t n) {
    if (n >= hist.snapshots()) throw HistoryTooShort(n, hist.snapshots());
    Vec scratch(psi_n.size());
    double total = 0.0;
    for (std::size_t m = hist.first_index(); m <= n; ++m) {
        const double wgt = hist.kernel().eval(hist.dt() * static_cast<double>(n - m));
        total += wgt * gradient_gap(K, psi_n, hist.snapshot(m), scratch);
    }
    return hist.dt() * total;
}

double history_functional(const History& hist, const TriDiag& K, const Vec& psi_n,
                          std::size_t n) {
    if (n >= hist.snapshots()) throw HistoryTooShort(n, hist.snapshots());
    const std::size_t len = psi_n.size();
    const std::size_t m0 = hist.first_index();
    const std::size_t terms = (n >= m0) ? n - m0 + 1 : 0;
#ifdef _OPENMP
    if (terms * len >= kParallelGrain) {
        const int nthreads = omp_get_max_threads();
        std::vector<double> partial(static_cast<std::size_t>(nthreads), 0.0);
#pragma omp parallel num_threads(nthreads)
        {
            Vec scratch(len);
            double mine = 0.0;
#pragma omp for schedule(static)
            for (long long m = static_cast<long long>(m0); m <= static_cast<long long>(n);
                 ++m) {
                const double wgt = hist.kernel().eval(
                    hist.dt() * static_cast<double>(n - static_cast<std::size_t>(m)));
                mine += wgt *
                        gradient_gap(K, psi_n, hist.snapshot(static_cast<std::size_t>(m)),
                                     scratch);
            }
            partial[static_cast<std::size_t>(omp_get_thread_num())] = mine;
        }
        double total = 0.0;
        for (double part : partial) total += part;  // thread order: deterministic
        return hist.dt() * total;
    }
#endif
    return history_functional_serial(hist, K, psi_n, n);
}

}  // namespace bresse
