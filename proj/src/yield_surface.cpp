#include "plastiflow/yield_surface.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "plastiflow/errors.hpp"
#include "plastiflow/small_linalg.hpp"

namespace plastiflow {

namespace {

constexpr double kInsideTol = 1e-11;
constexpr int kIterCap = 200;

double pow_abs(double z, double e) {
    if (z == 0.0) return e == 0.0 ? 1.0 : 0.0;
    return std::pow(std::abs(z), e);
}

// Hosford gap function f(y) = sum_{i<j} |y_i - y_j|^p and its derivatives.
double gap_value(const std::vector<double>& y, double p) {
    double s = 0;
    const int n = static_cast<int>(y.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += pow_abs(y[static_cast<size_t>(i)] - y[static_cast<size_t>(j)], p);
    return s;
}

std::vector<double> gap_gradient(const std::vector<double>& y, double p) {
    const int n = static_cast<int>(y.size());
    std::vector<double> g(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double z = y[static_cast<size_t>(i)] - y[static_cast<size_t>(j)];
            const double t = p * pow_abs(z, p - 1) * (z >= 0 ? 1.0 : -1.0);
            g[static_cast<size_t>(i)] += t;
            g[static_cast<size_t>(j)] -= t;
        }
    return g;
}

std::vector<double> gap_hessian(const std::vector<double>& y, double p) {
    const int n = static_cast<int>(y.size());
    std::vector<double> h(static_cast<size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double w = p * (p - 1) * pow_abs(y[static_cast<size_t>(i)] - y[static_cast<size_t>(j)], p - 2);
            h[static_cast<size_t>(i * n + i)] += w;
            h[static_cast<size_t>(j * n + j)] += w;
            h[static_cast<size_t>(i * n + j)] -= w;
            h[static_cast<size_t>(j * n + i)] -= w;
        }
    return h;
}

// Orthonormal frame of the zero-sum plane in R^3 used to parameterize the
// diagonal section of a Hosford set.
void zero_sum_frame(std::array<double, 3>& u, std::array<double, 3>& v) {
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    u = {1.0 / s2, -1.0 / s2, 0.0};
    v = {1.0 / s6, 1.0 / s6, -2.0 / s6};
}

}  // namespace

YieldSurface YieldSurface::interval(double lo, double hi) {
    if (!(lo < 0.0 && 0.0 < hi))
        throw ValidationError("interval surface must contain 0 in its interior (lo < 0 < hi)");
    YieldSurface s;
    s.kind_ = Kind::Interval;
    s.n_ = 1;
    s.lo_ = lo;
    s.hi_ = hi;
    s.r_k_ = std::min(-lo, hi);
    s.r_big_k_ = std::max(-lo, hi);
    return s;
}

YieldSurface YieldSurface::vonmises(int n, double radius) {
    if (n < 2 || n > 3) throw ValidationError("matrix surfaces require spatial dimension 2 or 3");
    if (!(radius > 0)) throw ValidationError("von Mises radius must be positive");
    YieldSurface s;
    s.kind_ = Kind::VonMisesBall;
    s.n_ = n;
    s.radius_ = radius;
    s.r_k_ = s.r_big_k_ = radius;
    return s;
}

YieldSurface YieldSurface::hill(int n, std::vector<double> b) {
    if (n < 2 || n > 3) throw ValidationError("matrix surfaces require spatial dimension 2 or 3");
    const int m = deviatoric_dim(n);
    if (static_cast<int>(b.size()) != m * m)
        throw ValidationError("Hill tensor must be an m x m row-major matrix on deviatoric coordinates");
    YieldSurface s;
    s.kind_ = Kind::HillEllipsoid;
    s.n_ = n;
    // Symmetrize defensively and eigendecompose once.
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double avg = 0.5 * (b[static_cast<size_t>(i * m + j)] + b[static_cast<size_t>(j * m + i)]);
            b[static_cast<size_t>(i * m + j)] = b[static_cast<size_t>(j * m + i)] = avg;
        }
    s.b_ = b;
    jacobi_eigen(b, m, s.b_values_, s.b_vectors_);
    if (s.b_values_.front() <= 0)
        throw ValidationError("Hill tensor must be positive definite on deviatoric space");
    s.r_k_ = 1.0 / std::sqrt(s.b_values_.back());
    s.r_big_k_ = 1.0 / std::sqrt(s.b_values_.front());
    return s;
}

YieldSurface YieldSurface::hosford(int n, double p, double scale) {
    if (n < 2 || n > 3) throw ValidationError("matrix surfaces require spatial dimension 2 or 3");
    if (!(p >= 2.0)) throw ValidationError("Hosford exponent must satisfy p >= 2");
    if (!(scale > 0)) throw ValidationError("Hosford scale must be positive");
    YieldSurface s;
    s.kind_ = Kind::Hosford;
    s.n_ = n;
    s.p_ = p;
    s.scale_ = scale;
    if (n == 2) {
        // Only one eigenvalue gap: the set is a disk of radius scale/sqrt(2).
        s.r_k_ = s.r_big_k_ = scale / std::sqrt(2.0);
    } else {
        // Boundary radius over the deviatoric diagonal circle.
        std::array<double, 3> u, v;
        zero_sum_frame(u, v);
        auto radius_at = [&](double theta) {
            const double c = std::cos(theta), sn = std::sin(theta);
            std::vector<double> y = {c * u[0] + sn * v[0], c * u[1] + sn * v[1], c * u[2] + sn * v[2]};
            return scale * std::pow(gap_value(y, p), -1.0 / p);
        };
        const int coarse = 4096;
        double rmin = std::numeric_limits<double>::max(), rmax = 0;
        double th_min = 0, th_max = 0;
        for (int i = 0; i < coarse; ++i) {
            const double th = 2.0 * std::numbers::pi * i / coarse;
            const double r = radius_at(th);
            if (r < rmin) { rmin = r; th_min = th; }
            if (r > rmax) { rmax = r; th_max = th; }
        }
        auto refine = [&](double th0, bool minimize) {
            const double h = 2.0 * std::numbers::pi / coarse;
            double a = th0 - h, b = th0 + h;
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
            double f1 = radius_at(c1), f2 = radius_at(c2);
            for (int it = 0; it < 80; ++it) {
                const bool pick_left = minimize ? (f1 < f2) : (f1 > f2);
                if (pick_left) {
                    b = c2; c2 = c1; f2 = f1;
                    c1 = b - gr * (b - a); f1 = radius_at(c1);
                } else {
                    a = c1; c1 = c2; f1 = f2;
                    c2 = a + gr * (b - a); f2 = radius_at(c2);
                }
            }
            return radius_at(0.5 * (a + b));
        };
        s.r_k_ = refine(th_min, true);
        s.r_big_k_ = refine(th_max, false);
    }
    return s;
}

std::string YieldSurface::kind_name() const {
    switch (kind_) {
        case Kind::Interval: return "interval";
        case Kind::VonMisesBall: return "vonmises";
        case Kind::HillEllipsoid: return "hill";
        case Kind::Hosford: return "hosford";
    }
    return "?";
}

YieldSurface YieldSurface::with_curvature(double c_k) const {
    YieldSurface s = *this;
    s.c_k_ = c_k;
    return s;
}

// --- scalar interface -------------------------------------------------------

ScalarProjection YieldSurface::project(double x) const {
    if (kind_ != Kind::Interval) throw ValidationError("scalar projection is defined for interval surfaces only");
    ScalarProjection r;
    r.point = std::clamp(x, lo_, hi_);
    r.distance = std::abs(x - r.point);
    r.inside = r.distance == 0.0;
    return r;
}

double YieldSurface::distance(double x) const { return project(x).distance; }

double YieldSurface::support(double q) const {
    if (kind_ != Kind::Interval) throw ValidationError("scalar support is defined for interval surfaces only");
    return std::max(lo_ * q, hi_ * q);
}

double YieldSurface::projection_differential(double x, double v) const {
    if (distance(x) <= 1e-8)
        throw DegenerateInput("projection differential needs distance(x) > 1e-8");
    const double h = 1e-5 * (1.0 + std::abs(x));
    return (project(x + h * v).point - project(x - h * v).point) * v / (2.0 * h);
}

// --- matrix interface -------------------------------------------------------

MatrixProjection YieldSurface::project(const SymMatrix& x) const {
    if (kind_ == Kind::Interval) throw ValidationError("interval surfaces project scalars, not matrices");
    auto [dev, tr] = deviatoric_split(x);
    MatrixProjection r = project_deviatoric(dev);
    const double mean = tr / x.dim();
    SymMatrix point = r.point;
    for (int i = 0; i < x.dim(); ++i) point.set(i, i, point(i, i) + mean);
    r.point = point;
    return r;
}

double YieldSurface::distance(const SymMatrix& x) const { return project(x).distance; }

MatrixProjection YieldSurface::project_deviatoric(const SymMatrix& q) const {
    assert(q.dim() == n_);
    MatrixProjection r{SymMatrix::zero(n_), 0.0, false};
    switch (kind_) {
        case Kind::Interval:
            throw ValidationError("interval surfaces project scalars, not matrices");
        case Kind::VonMisesBall: {
            const double nrm = q.norm();
            if (nrm <= radius_ * (1.0 + 1e-15)) {
                r.point = q;
                r.inside = true;
            } else {
                r.point = q * (radius_ / nrm);
                r.distance = nrm - radius_;
            }
            return r;
        }
        case Kind::HillEllipsoid: {
            const int m = deviatoric_dim(n_);
            const std::vector<double> c = to_deviatoric_coords(q);
            // Coordinates in the eigenbasis of B.
            std::vector<double> y(static_cast<size_t>(m), 0.0);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k)
                    y[static_cast<size_t>(i)] += b_vectors_[static_cast<size_t>(k * m + i)] * c[static_cast<size_t>(k)];
            auto level = [&](double mu) {
                double f = 0;
                for (int i = 0; i < m; ++i) {
                    const double d = 1.0 + mu * b_values_[static_cast<size_t>(i)];
                    f += b_values_[static_cast<size_t>(i)] * y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)] / (d * d);
                }
                return f - 1.0;
            };
            if (level(0.0) <= 1e-14) {
                r.point = q;
                r.inside = true;
                return r;
            }
            double mu_lo = 0.0, mu_hi = 1.0;
            int grow = 0;
            while (level(mu_hi) > 0) {
                mu_hi *= 2.0;
                if (++grow > 200) throw NonConvergence("Hill projection bracket failed to close");
            }
            double mu = mu_hi;
            for (int it = 0; it < kIterCap; ++it) {
                double f = 0, df = 0;
                for (int i = 0; i < m; ++i) {
                    const double bi = b_values_[static_cast<size_t>(i)];
                    const double d = 1.0 + mu * bi;
                    const double w = bi * y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)];
                    f += w / (d * d);
                    df += -2.0 * w * bi / (d * d * d);
                }
                f -= 1.0;
                if (f > 0) mu_lo = mu; else mu_hi = mu;
                if (std::abs(f) < 1e-14) break;
                double mu_next = mu - f / df;
                if (!(mu_next > mu_lo && mu_next < mu_hi)) mu_next = 0.5 * (mu_lo + mu_hi);
                mu = mu_next;
            }
            std::vector<double> qy(static_cast<size_t>(m));
            for (int i = 0; i < m; ++i)
                qy[static_cast<size_t>(i)] = y[static_cast<size_t>(i)] / (1.0 + mu * b_values_[static_cast<size_t>(i)]);
            // Back to the deviatoric basis.
            std::vector<double> cq(static_cast<size_t>(m), 0.0);
            for (int k = 0; k < m; ++k)
                for (int i = 0; i < m; ++i)
                    cq[static_cast<size_t>(k)] += b_vectors_[static_cast<size_t>(k * m + i)] * qy[static_cast<size_t>(i)];
            r.point = from_deviatoric_coords(n_, cq);
            r.distance = (q - r.point).norm();
            return r;
        }
        case Kind::Hosford: {
            const double fscale = std::pow(scale_, p_);
            SymMatrix work = q;
            std::array<double, 3> lam{};
            std::array<std::array<double, 3>, 3> frame{};
            work.eigen(lam, frame);
            // Break eigenvalue ties with a deterministic 1e-12 diagonal nudge.
            const double sc = std::max(1.0, q.norm());
            bool tied = false;
            for (int i = 0; i + 1 < n_; ++i)
                if (std::abs(lam[static_cast<size_t>(i + 1)] - lam[static_cast<size_t>(i)]) < 1e-12 * sc) tied = true;
            if (tied) {
                work = q;
                for (int i = 0; i < n_; ++i)
                    work.set(i, i, work(i, i) + 1e-12 * sc * (i + 1));
                work.eigen(lam, frame);
            }
            std::vector<double> y(lam.begin(), lam.begin() + n_);
            if (gap_value(y, p_) <= fscale * (1.0 + kInsideTol)) {
                r.point = q;
                r.inside = true;
                return r;
            }
            const std::vector<double> proj = hosford_project_eigs(y);
            std::array<double, 3> pl{};
            double dist2 = 0;
            for (int i = 0; i < n_; ++i) {
                pl[static_cast<size_t>(i)] = proj[static_cast<size_t>(i)];
                const double d = y[static_cast<size_t>(i)] - proj[static_cast<size_t>(i)];
                dist2 += d * d;
            }
            r.point = SymMatrix::from_eigen(n_, pl, frame);
            r.distance = std::sqrt(dist2);
            return r;
        }
    }
    return r;
}

std::vector<double> YieldSurface::hosford_project_eigs(const std::vector<double>& lam) const {
    const double target = std::pow(scale_, p_);
    const int n = n_;

    // Inner solve: q + t grad f(q) = lam, by damped Newton (strictly convex).
    auto inner = [&](double t, std::vector<double> q) {
        for (int it = 0; it < 100; ++it) {
            std::vector<double> g = gap_gradient(q, p_);
            std::vector<double> res(static_cast<size_t>(n));
            double rn = 0;
            for (int i = 0; i < n; ++i) {
                res[static_cast<size_t>(i)] = q[static_cast<size_t>(i)] + t * g[static_cast<size_t>(i)] - lam[static_cast<size_t>(i)];
                rn = std::max(rn, std::abs(res[static_cast<size_t>(i)]));
            }
            if (rn < 1e-14 * (1.0 + std::abs(lam[0]) + std::abs(lam[static_cast<size_t>(n - 1)]))) break;
            std::vector<double> jac = gap_hessian(q, p_);
            for (auto& v : jac) v *= t;
            for (int i = 0; i < n; ++i) jac[static_cast<size_t>(i * n + i)] += 1.0;
            std::vector<double> step = res;
            solve_dense(jac, step, n);
            // Halve until the residual decreases.
            double alpha = 1.0;
            for (int halves = 0; halves < 40; ++halves) {
                std::vector<double> qt = q;
                for (int i = 0; i < n; ++i) qt[static_cast<size_t>(i)] -= alpha * step[static_cast<size_t>(i)];
                std::vector<double> gt = gap_gradient(qt, p_);
                double rt = 0;
                for (int i = 0; i < n; ++i)
                    rt = std::max(rt, std::abs(qt[static_cast<size_t>(i)] + t * gt[static_cast<size_t>(i)] - lam[static_cast<size_t>(i)]));
                if (rt < rn) {
                    q = qt;
                    break;
                }
                alpha *= 0.5;
            }
        }
        return q;
    };

    // Outer solve on the multiplier: f(q(t)) decreases monotonically from
    // f(lam) > target to 0; bracket then safeguarded bisection/secant.
    double t_lo = 0.0, t_hi = 1e-3;
    std::vector<double> q = lam;
    double f_hi;
    int grow = 0;
    do {
        q = inner(t_hi, q);
        f_hi = gap_value(q, p_);
        if (f_hi > target) {
            t_lo = t_hi;
            t_hi *= 4.0;
        }
        if (++grow > 200) throw NonConvergence("Hosford projection multiplier bracket failed");
    } while (f_hi > target);

    double t = t_hi;
    double f_q = f_hi;
    for (int it = 0; it < kIterCap; ++it) {
        if (std::abs(f_q - target) <= 1e-13 * target) break;
        if (f_q > target) t_lo = t; else t_hi = t;
        t = 0.5 * (t_lo + t_hi);
        q = inner(t, q);
        f_q = gap_value(q, p_);
        if (it == kIterCap - 1 && std::abs(f_q - target) > 1e-10 * target)
            throw NonConvergence("Hosford projection failed its tolerance within the iteration cap");
    }
    return q;
}

double YieldSurface::support(const SymMatrix& q) const {
    if (kind_ == Kind::Interval) throw ValidationError("scalar surfaces take scalar support arguments");
    assert(q.dim() == n_);
    if (std::abs(q.trace()) > 1e-10 * (1.0 + q.norm()))
        throw ValidationError("support function argument must be trace-free");
    switch (kind_) {
        case Kind::VonMisesBall:
            return radius_ * q.norm();
        case Kind::HillEllipsoid: {
            const int m = deviatoric_dim(n_);
            const std::vector<double> c = to_deviatoric_coords(q);
            std::vector<double> y(static_cast<size_t>(m), 0.0);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k)
                    y[static_cast<size_t>(i)] += b_vectors_[static_cast<size_t>(k * m + i)] * c[static_cast<size_t>(k)];
            double s = 0;
            for (int i = 0; i < m; ++i)
                s += y[static_cast<size_t>(i)] * y[static_cast<size_t>(i)] / b_values_[static_cast<size_t>(i)];
            return std::sqrt(s);
        }
        case Kind::Hosford: {
            auto lam3 = q.eigenvalues();
            std::vector<double> lam(lam3.begin(), lam3.begin() + n_);
            return hosford_support_eigs(lam);
        }
        default:
            return 0;
    }
}

double YieldSurface::hosford_support_eigs(const std::vector<double>& lam) const {
    if (n_ == 2) {
        // Two boundary points +/- (s/2, -s/2).
        return 0.5 * scale_ * std::abs(lam[0] - lam[1]);
    }
    std::array<double, 3> u, v;
    zero_sum_frame(u, v);
    auto objective = [&](double theta) {
        const double c = std::cos(theta), sn = std::sin(theta);
        std::vector<double> y = {c * u[0] + sn * v[0], c * u[1] + sn * v[1], c * u[2] + sn * v[2]};
        const double rho = scale_ * std::pow(gap_value(y, p_), -1.0 / p_);
        return rho * (y[0] * lam[0] + y[1] * lam[1] + y[2] * lam[2]);
    };
    // Coarse sweep of the boundary circle, then golden-section refinement of
    // every coarse local maximum (multistart guard against flat landscapes).
    const int coarse = 720;
    std::vector<double> vals(coarse);
    for (int i = 0; i < coarse; ++i) vals[static_cast<size_t>(i)] = objective(2.0 * std::numbers::pi * i / coarse);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double best = -std::numeric_limits<double>::max();
    for (int i = 0; i < coarse; ++i) {
        const double prev = vals[static_cast<size_t>((i + coarse - 1) % coarse)];
        const double next = vals[static_cast<size_t>((i + 1) % coarse)];
        if (vals[static_cast<size_t>(i)] < prev || vals[static_cast<size_t>(i)] < next) continue;
        const double h = 2.0 * std::numbers::pi / coarse;
        double a = 2.0 * std::numbers::pi * i / coarse - h;
        double b = a + 2.0 * h;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        double f1 = objective(c1), f2 = objective(c2);
        for (int it = 0; it < 90; ++it) {
            if (f1 > f2) {
                b = c2; c2 = c1; f2 = f1;
                c1 = b - gr * (b - a); f1 = objective(c1);
            } else {
                a = c1; c1 = c2; f1 = f2;
                c2 = a + gr * (b - a); f2 = objective(c2);
            }
        }
        best = std::max(best, objective(0.5 * (a + b)));
    }
    if (best == -std::numeric_limits<double>::max())
        throw NonConvergence("Hosford support ascent found no local maximum");
    return best;
}

double YieldSurface::projection_differential(const SymMatrix& x, const SymMatrix& v) const {
    if (distance(x) <= 1e-8)
        throw DegenerateInput("projection differential needs distance(x) > 1e-8");
    const double h = 1e-5 * (1.0 + x.norm());
    const SymMatrix qp = project(x + h * v).point;
    const SymMatrix qm = project(x - h * v).point;
    return dot(qp - qm, v) / (2.0 * h);
}

double YieldSurface::defining_value(const SymMatrix& dev) const {
    switch (kind_) {
        case Kind::Interval:
            throw ValidationError("interval surfaces have no matrix defining function");
        case Kind::VonMisesBall:
            return dot(dev, dev);  // level set radius^2
        case Kind::HillEllipsoid: {
            const std::vector<double> c = to_deviatoric_coords(dev);
            const std::vector<double> bc = hill_apply(c);
            double s = 0;
            for (size_t i = 0; i < c.size(); ++i) s += bc[i] * c[i];
            return s;  // level set 1
        }
        case Kind::Hosford: {
            auto lam3 = dev.eigenvalues();
            std::vector<double> lam(lam3.begin(), lam3.begin() + n_);
            return gap_value(lam, p_) / std::pow(scale_, p_);  // level set 1
        }
    }
    return 0;
}

SymMatrix YieldSurface::defining_gradient(const SymMatrix& dev) const {
    switch (kind_) {
        case Kind::Interval:
            throw ValidationError("interval surfaces have no matrix defining function");
        case Kind::VonMisesBall:
            return 2.0 * dev;
        case Kind::HillEllipsoid: {
            const std::vector<double> c = to_deviatoric_coords(dev);
            std::vector<double> bc = hill_apply(c);
            for (auto& t : bc) t *= 2.0;
            return from_deviatoric_coords(n_, bc);
        }
        case Kind::Hosford: {
            std::array<double, 3> lam{};
            std::array<std::array<double, 3>, 3> frame{};
            dev.eigen(lam, frame);
            std::vector<double> y(lam.begin(), lam.begin() + n_);
            std::vector<double> g = gap_gradient(y, p_);
            std::array<double, 3> gl{};
            const double fs = std::pow(scale_, p_);
            for (int i = 0; i < n_; ++i) gl[static_cast<size_t>(i)] = g[static_cast<size_t>(i)] / fs;
            return SymMatrix::from_eigen(n_, gl, frame);
        }
    }
    return SymMatrix::zero(n_);
}

double YieldSurface::boundary_radius(const SymMatrix& unit_dev) const {
    switch (kind_) {
        case Kind::Interval:
            throw ValidationError("interval surfaces have no matrix boundary");
        case Kind::VonMisesBall:
            return radius_;
        case Kind::HillEllipsoid: {
            const std::vector<double> c = to_deviatoric_coords(unit_dev);
            const std::vector<double> bc = hill_apply(c);
            double s = 0;
            for (size_t i = 0; i < c.size(); ++i) s += bc[i] * c[i];
            return 1.0 / std::sqrt(s);
        }
        case Kind::Hosford: {
            auto lam3 = unit_dev.eigenvalues();
            std::vector<double> lam(lam3.begin(), lam3.begin() + n_);
            return scale_ * std::pow(gap_value(lam, p_), -1.0 / p_);
        }
    }
    return 0;
}

std::vector<double> YieldSurface::hill_apply(const std::vector<double>& c) const {
    const int m = deviatoric_dim(n_);
    std::vector<double> out(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out[static_cast<size_t>(i)] += b_[static_cast<size_t>(i * m + j)] * c[static_cast<size_t>(j)];
    return out;
}

std::optional<double> YieldSurface::estimate_curvature(int samples, std::uint64_t seed) const {
    if (kind_ == Kind::Interval) return std::nullopt;  // flat 1D boundary

    double quotient_min = std::numeric_limits<double>::max();
    bool bad = false;

#pragma omp parallel for reduction(min : quotient_min) reduction(|| : bad) schedule(static)
    for (int s = 0; s < samples; ++s) {
        const std::uint64_t sample_seed = seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(s) + 1));
        const SymMatrix dir = random_unit_deviatoric(n_, sample_seed);
        const SymMatrix y = dir * boundary_radius(dir);
        const SymMatrix grad = defining_gradient(y);
        const double gnorm = grad.norm();
        if (!(gnorm > 1e-12)) { bad = true; continue; }

        // Random tangent direction: strip the normal component off a random
        // deviatoric direction.
        SymMatrix w = random_unit_deviatoric(n_, sample_seed ^ 0xabcdef12345ULL);
        SymMatrix tang = w - (dot(w, grad) / (gnorm * gnorm)) * grad;
        const double tnorm = tang.norm();
        if (tnorm < 1e-8) continue;
        tang *= 1.0 / tnorm;

        double quad;
        if (kind_ == Kind::VonMisesBall) {
            quad = 2.0 * dot(tang, tang);
        } else if (kind_ == Kind::HillEllipsoid) {
            const std::vector<double> c = to_deviatoric_coords(tang);
            const std::vector<double> bc = hill_apply(c);
            quad = 0;
            for (size_t i = 0; i < c.size(); ++i) quad += 2.0 * bc[i] * c[i];
        } else {
            // Central second difference of F along the tangent.
            const double h = 3e-4 * (1.0 + y.norm());
            const double fp = defining_value(y + h * tang);
            const double f0 = defining_value(y);
            const double fm = defining_value(y - h * tang);
            quad = (fp - 2.0 * f0 + fm) / (h * h);
        }
        const double q = quad / gnorm;
        if (!std::isfinite(q)) { bad = true; continue; }
        quotient_min = std::min(quotient_min, q);
    }

    if (bad || quotient_min == std::numeric_limits<double>::max())
        throw NotSmooth("curvature sampling degenerated; widen sampling or check the surface");
    return quotient_min;
}

SymMatrix random_unit_deviatoric(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const int m = deviatoric_dim(n);
    std::vector<double> c(static_cast<size_t>(m));
    double nrm = 0;
    do {
        nrm = 0;
        for (auto& v : c) {
            v = normal(rng);
            nrm += v * v;
        }
        nrm = std::sqrt(nrm);
    } while (nrm < 1e-8);
    for (auto& v : c) v /= nrm;
    return from_deviatoric_coords(n, c);
}

}  // namespace plastiflow
