#pragma once

#include "orthomom/common.hpp"
#include "orthomom/dense_tensor.hpp"
#include "orthomom/gram.hpp"
#include "orthomom/moments.hpp"
#include "orthomom/pairing.hpp"
#include "orthomom/rng.hpp"
#include "orthomom/set_partition.hpp"
#include "orthomom/weingarten.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace orthomom {

struct SamplerConfig {
    std::uint64_t seed = 42;
    std::uint64_t samples = 1'000'000;
    int n = 0;
    int workers = 1;
};

struct Estimate {
    double mean = 0;
    double stderr_ = 0;  // sample standard deviation / sqrt(samples)
    std::uint64_t samples = 0;

    bool within(double exact, double sigmas) const {
        return std::abs(mean - exact) <= sigmas * stderr_;
    }
};

/// Row-major n x n matrix of doubles; just enough for sampled orthogonal
/// matrices.
struct SquareMatrix {
    int n = 0;
    std::vector<double> a;

    explicit SquareMatrix(int dim) : n(dim), a(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }

    /// 1-based entry accessor matching the x_{ij} notation.
    double entry(int i, int j) const { return at(i - 1, j - 1); }
};

/// Uniform unit vector: a normalized standard Gaussian draw (re-drawn in the
/// measure-zero case of a vanishing norm).
inline Vector sample_sphere(int n, Xoshiro256pp& rng) {
    if (n < 1) throw std::invalid_argument("sample_sphere: n >= 1 required");
    Vector v(static_cast<std::size_t>(n));
    for (;;) {
        for (auto& x : v) x = rng.gaussian();
        const double r = norm2(v);
        if (r > 1e-100) {
            for (auto& x : v) x /= r;
            return v;
        }
    }
}

/// Haar-distributed orthogonal matrix: Gaussian matrix, Householder QR, then
/// the columns rescaled so the triangular factor has positive diagonal.
/// Numerically rank-deficient draws (another measure-zero event) are
/// re-drawn.
inline SquareMatrix sample_haar_orthogonal(int n, Xoshiro256pp& rng) {
    if (n < 1) throw std::invalid_argument("sample_haar_orthogonal: n >= 1 required");
    for (;;) {
        SquareMatrix a(n);
        for (auto& x : a.a) x = rng.gaussian();

        // Householder vectors held in-place below the diagonal; diag(R) kept.
        std::vector<double> rdiag(static_cast<std::size_t>(n), 0.0);
        std::vector<std::vector<double>> reflectors;
        bool degenerate = false;
        for (int j = 0; j < n && !degenerate; ++j) {
            double norm = 0;
            for (int i = j; i < n; ++i) norm += a.at(i, j) * a.at(i, j);
            norm = std::sqrt(norm);
            if (norm < 1e-12) {
                degenerate = true;
                break;
            }
            const double alpha = (a.at(j, j) >= 0) ? -norm : norm;
            std::vector<double> v(static_cast<std::size_t>(n - j), 0.0);
            v[0] = a.at(j, j) - alpha;
            for (int i = j + 1; i < n; ++i) v[static_cast<std::size_t>(i - j)] = a.at(i, j);
            double vnorm2 = 0;
            for (double x : v) vnorm2 += x * x;
            if (vnorm2 > 0) {
                for (int c = j; c < n; ++c) {
                    double dotvc = 0;
                    for (int i = j; i < n; ++i) dotvc += v[static_cast<std::size_t>(i - j)] * a.at(i, c);
                    const double f = 2.0 * dotvc / vnorm2;
                    for (int i = j; i < n; ++i) a.at(i, c) -= f * v[static_cast<std::size_t>(i - j)];
                }
            }
            rdiag[static_cast<std::size_t>(j)] = a.at(j, j);
            reflectors.push_back(std::move(v));
        }
        if (degenerate) continue;

        // Q = H_0 H_1 ... H_{n-1} applied to the identity.
        SquareMatrix q(n);
        for (int i = 0; i < n; ++i) q.at(i, i) = 1.0;
        for (int j = n - 1; j >= 0; --j) {
            const auto& v = reflectors[static_cast<std::size_t>(j)];
            double vnorm2 = 0;
            for (double x : v) vnorm2 += x * x;
            if (vnorm2 == 0) continue;
            for (int c = 0; c < n; ++c) {
                double dotvc = 0;
                for (int i = j; i < n; ++i) dotvc += v[static_cast<std::size_t>(i - j)] * q.at(i, c);
                const double f = 2.0 * dotvc / vnorm2;
                for (int i = j; i < n; ++i) q.at(i, c) -= f * v[static_cast<std::size_t>(i - j)];
            }
        }
        for (int j = 0; j < n; ++j)
            if (rdiag[static_cast<std::size_t>(j)] < 0)
                for (int i = 0; i < n; ++i) q.at(i, j) = -q.at(i, j);
        return q;
    }
}

namespace detail {

struct Accumulator {
    double sum = 0;
    double sumsq = 0;
    std::uint64_t count = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }

    void merge(const Accumulator& o) {
        sum += o.sum;
        sumsq += o.sumsq;
        count += o.count;
    }

    Estimate estimate() const {
        Estimate e;
        e.samples = count;
        if (count == 0) return e;
        e.mean = sum / static_cast<double>(count);
        if (count > 1) {
            const double var = (sumsq - sum * sum / static_cast<double>(count)) /
                               static_cast<double>(count - 1);
            e.stderr_ = std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
        }
        return e;
    }
};

/// Runs sample_fn(rng) cfg.samples times, split across cfg.workers streams
/// derived from (seed, worker index); partial sums merge in worker order so a
/// fixed worker count reproduces bit-identical results. Single-worker runs
/// stay on the calling thread and are the reproducibility reference.
template <typename SampleFn>
Estimate estimate_scalar(const SamplerConfig& cfg, SampleFn&& sample_fn) {
    if (cfg.samples < 1) throw std::invalid_argument("estimate_scalar: samples >= 1 required");
    const int workers = std::max(cfg.workers, 1);
    std::vector<Accumulator> parts(static_cast<std::size_t>(workers));
    auto run_worker = [&](int w) {
        Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(w));
        const std::uint64_t base = cfg.samples / static_cast<std::uint64_t>(workers);
        const std::uint64_t extra = cfg.samples % static_cast<std::uint64_t>(workers);
        const std::uint64_t mine = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        auto& acc = parts[static_cast<std::size_t>(w)];
        for (std::uint64_t s = 0; s < mine; ++s) acc.add(sample_fn(rng));
    };
    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }
    Accumulator total;
    for (const auto& p : parts) total.merge(p);
    return total.estimate();
}

inline double int_power(double base, int exp) {
    double r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace detail

/// Sample mean of <x,y>^{2k} over independent pairs of uniform unit vectors.
inline Estimate estimate_dot_power(int n, int k, const SamplerConfig& cfg) {
    if (k < 1) throw std::invalid_argument("estimate_dot_power: k >= 1 required");
    if (n < 1) throw std::invalid_argument("estimate_dot_power: n >= 1 required");
    SamplerConfig c = cfg;
    c.n = n;
    return detail::estimate_scalar(c, [n, k](Xoshiro256pp& rng) {
        const Vector x = sample_sphere(n, rng);
        const Vector y = sample_sphere(n, rng);
        return detail::int_power(dot(x, y), 2 * k);
    });
}

/// Sample mean of the entry product x_{i_1 j_1} ... x_{i_m j_m} over Haar
/// orthogonal draws.
inline Estimate estimate_query_moment(const MomentQuery& q, const SamplerConfig& cfg) {
    SamplerConfig c = cfg;
    c.n = q.n;
    return detail::estimate_scalar(c, [&q](Xoshiro256pp& rng) {
        const SquareMatrix x = sample_haar_orthogonal(q.n, rng);
        double prod = 1;
        for (const auto& [i, j] : q.factors) prod *= x.entry(i, j);
        return prod;
    });
}

/// Sample mean of <x(P), y(Q)> where x(P), y(Q) are generalized Veronese
/// tensors built from independent uniform unit vectors. Inner products of
/// decomposable tensors factor over positions, so only the k x k matrix of
/// vector dot products is needed per sample.
inline Estimate estimate_pair_moment(const Pairing& p, const Pairing& q, int n,
                                     const SamplerConfig& cfg) {
    if (p.order() != q.order())
        throw std::invalid_argument("estimate_pair_moment: pairings of different order");
    if (n < 1) throw std::invalid_argument("estimate_pair_moment: n >= 1 required");
    const int m = p.order();
    const int k = p.size();
    std::vector<int> owner_p(static_cast<std::size_t>(m)), owner_q(static_cast<std::size_t>(m));
    for (int b = 0; b < k; ++b) {
        const auto& [a1, a2] = p.pairs()[static_cast<std::size_t>(b)];
        owner_p[static_cast<std::size_t>(a1 - 1)] = b;
        owner_p[static_cast<std::size_t>(a2 - 1)] = b;
        const auto& [b1, b2] = q.pairs()[static_cast<std::size_t>(b)];
        owner_q[static_cast<std::size_t>(b1 - 1)] = b;
        owner_q[static_cast<std::size_t>(b2 - 1)] = b;
    }
    SamplerConfig c = cfg;
    c.n = n;
    return detail::estimate_scalar(c, [&, n, m, k](Xoshiro256pp& rng) {
        std::vector<Vector> xs, ys;
        xs.reserve(static_cast<std::size_t>(k));
        ys.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) xs.push_back(sample_sphere(n, rng));
        for (int i = 0; i < k; ++i) ys.push_back(sample_sphere(n, rng));
        std::vector<double> d(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                d[static_cast<std::size_t>(i) * static_cast<std::size_t>(k) + static_cast<std::size_t>(j)] =
                    dot(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]);
        double prod = 1;
        for (int s = 0; s < m; ++s)
            prod *= d[static_cast<std::size_t>(owner_p[static_cast<std::size_t>(s)]) *
                          static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(owner_q[static_cast<std::size_t>(s)])];
        return prod;
    });
}

/// Entrywise estimate of E(placed_tensor) over independent sphere draws, one
/// independent unit vector per block of the partition.
struct TensorEstimate {
    DenseTensor mean;
    DenseTensor stderr_;
    std::uint64_t samples = 0;
};

inline TensorEstimate estimate_tensor_expectation(const SetPartition& partition, int n,
                                                  const SamplerConfig& cfg) {
    if (cfg.samples < 1) throw std::invalid_argument("estimate_tensor_expectation: samples >= 1 required");
    const int m = partition.ground_size();
    const int l = partition.block_count();
    const int workers = std::max(cfg.workers, 1);

    DenseTensor probe(n, m);  // enforces the entry cap up front
    const std::size_t entries = probe.entry_count();

    struct Part {
        std::vector<double> sum, sumsq;
        std::uint64_t count = 0;
    };
    std::vector<Part> parts(static_cast<std::size_t>(workers));
    auto run_worker = [&](int w) {
        Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(w));
        auto& part = parts[static_cast<std::size_t>(w)];
        part.sum.assign(entries, 0.0);
        part.sumsq.assign(entries, 0.0);
        const std::uint64_t base = cfg.samples / static_cast<std::uint64_t>(workers);
        const std::uint64_t extra = cfg.samples % static_cast<std::uint64_t>(workers);
        const std::uint64_t mine = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
        std::vector<Vector> vs(static_cast<std::size_t>(l));
        for (std::uint64_t s = 0; s < mine; ++s) {
            for (auto& v : vs) v = sample_sphere(n, rng);
            const DenseTensor t = placed_tensor(vs, partition);
            const auto& e = t.entries();
            for (std::size_t i = 0; i < entries; ++i) {
                part.sum[i] += e[i];
                part.sumsq[i] += e[i] * e[i];
            }
            ++part.count;
        }
    };
    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) threads.emplace_back(run_worker, w);
        for (auto& t : threads) t.join();
    }

    TensorEstimate out{DenseTensor(n, m), DenseTensor(n, m), 0};
    std::vector<double> sum(entries, 0.0), sumsq(entries, 0.0);
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < entries; ++i) {
            sum[i] += part.sum[i];
            sumsq[i] += part.sumsq[i];
        }
        out.samples += part.count;
    }
    const double count = static_cast<double>(out.samples);
    for (std::size_t i = 0; i < entries; ++i) {
        out.mean.entries()[i] = sum[i] / count;
        if (out.samples > 1) {
            const double var = (sumsq[i] - sum[i] * sum[i] / count) / (count - 1.0);
            out.stderr_.entries()[i] = std::sqrt(std::max(var, 0.0) / count);
        }
    }
    return out;
}

/// Both sides of the projected-norm identity: the sampled left side
/// E(<x,y>^m) and the exact right side, the squared norm of the projected
/// Veronese tensor computed through the Gram form (alpha^T G alpha).
struct Lemma3Result {
    Estimate lhs;
    Rational rhs;
};

inline Lemma3Result estimate_lemma3(int n, int m, const SamplerConfig& cfg) {
    if (m < 1) throw std::invalid_argument("estimate_lemma3: m >= 1 required");
    if (n < 1) throw std::invalid_argument("estimate_lemma3: n >= 1 required");
    Lemma3Result res;
    SamplerConfig c = cfg;
    c.n = n;
    res.lhs = detail::estimate_scalar(c, [n, m](Xoshiro256pp& rng) {
        const Vector x = sample_sphere(n, rng);
        const Vector y = sample_sphere(n, rng);
        return detail::int_power(dot(x, y), m);
    });
    if (m % 2 != 0) {
        res.rhs = 0;
        return res;
    }
    const int k = m / 2;
    const GramMatrix g = gram_matrix(k);
    const Rational coeff(1, p_poly_value(k, n));
    Rational quad = 0;
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j) quad += coeff * coeff * Rational(g.value(i, j, n));
    res.rhs = quad;
    return res;
}

/// Arbitration report: the two exact evaluators plus the Monte Carlo
/// estimate, with 4-standard-error agreement flags. Both computed values are
/// always reported; neither is substituted for the other.
struct CompareReport {
    Rational theorem3;
    Rational exact;
    Estimate mc;
    bool theorem3_within_4se = false;
    bool exact_within_4se = false;
};

inline CompareReport compare_methods(const MomentQuery& q, const SamplerConfig& cfg) {
    CompareReport rep;
    rep.theorem3 = theorem3_moment(q);
    rep.exact = exact_moment(q);
    rep.mc = estimate_query_moment(q, cfg);
    rep.theorem3_within_4se = rep.mc.within(static_cast<double>(rep.theorem3), 4.0);
    rep.exact_within_4se = rep.mc.within(static_cast<double>(rep.exact), 4.0);
    return rep;
}

} // namespace orthomom
