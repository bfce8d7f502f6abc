#include "cbottle/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "cbottle/errors.hpp"

namespace cbottle::lattice {

double Vec2::norm() const { return std::hypot(x, y); }

namespace {

using classical::IntMatrix2;

struct Mat2 {
    // column vectors c1, c2
    Vec2 c1, c2;

    double det() const { return c1.cross(c2); }
    Vec2 apply(double a, double b) const { return c1 * a + c2 * b; }
    Vec2 solve(const Vec2& rhs) const {
        const double d = det();
        return {(rhs.x * c2.y - rhs.y * c2.x) / d,
                (c1.x * rhs.y - c1.y * rhs.x) / d};
    }
    double min_edge() const { return std::min(c1.norm(), c2.norm()); }
};

// Uniform bucket grid over the rescaled cloud; bucket size ~ one cell edge.
class SpatialHash {
  public:
    SpatialHash(const std::vector<Vec2>& pts, double bucket)
        : pts_(pts), bucket_(bucket) {
        buckets_.reserve(pts.size());
        double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            buckets_[key(pts[i])].push_back(static_cast<int>(i));
            lo_x = std::min(lo_x, pts[i].x);
            hi_x = std::max(hi_x, pts[i].x);
            lo_y = std::min(lo_y, pts[i].y);
            hi_y = std::max(hi_y, pts[i].y);
        }
        max_ring_ =
            static_cast<int>(std::hypot(hi_x - lo_x, hi_y - lo_y) / bucket_) +
            2;
    }

    // Index of the nearest point and its distance.
    std::pair<int, double> nearest(const Vec2& q) const {
        const auto [cx, cy] = cell(q);
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring <= 2 * max_ring_; ++ring) {
            if (best >= 0 && best_d <= bucket_ * (ring - 1)) break;
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    const auto it = buckets_.find(pack(cx + dx, cy + dy));
                    if (it == buckets_.end()) continue;
                    for (int i : it->second) {
                        const double d = (pts_[i] - q).norm();
                        if (d < best_d) {
                            best_d = d;
                            best = i;
                        }
                    }
                }
            }
        }
        if (best < 0) throw NumericalError("nearest: empty cloud region");
        return {best, best_d};
    }

    // All point indices within radius of q.
    std::vector<int> within(const Vec2& q, double radius) const {
        std::vector<int> out;
        const auto [cx, cy] = cell(q);
        const int span = static_cast<int>(radius / bucket_) + 1;
        for (int dx = -span; dx <= span; ++dx)
            for (int dy = -span; dy <= span; ++dy) {
                const auto it = buckets_.find(pack(cx + dx, cy + dy));
                if (it == buckets_.end()) continue;
                for (int i : it->second)
                    if ((pts_[i] - q).norm() <= radius) out.push_back(i);
            }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    std::pair<int, int> cell(const Vec2& p) const {
        return {static_cast<int>(std::floor(p.x / bucket_)),
                static_cast<int>(std::floor(p.y / bucket_))};
    }
    std::int64_t key(const Vec2& p) const {
        const auto [cx, cy] = cell(p);
        return pack(cx, cy);
    }
    static std::int64_t pack(int cx, int cy) {
        return (static_cast<std::int64_t>(cx) << 32) ^
               static_cast<std::uint32_t>(cy);
    }

    const std::vector<Vec2>& pts_;
    double bucket_;
    int max_ring_ = 2;
    std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

std::vector<Vec2> rescale(std::span<const Vec2> cloud, const Vec2& scale) {
    if (scale.x == 0.0 || scale.y == 0.0)
        throw NumericalError("lattice scale must be nonzero");
    std::vector<Vec2> out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) out.push_back({p.x / scale.x, p.y / scale.y});
    return out;
}

// Lagrange-Gauss reduction of the basis; returns the integer change of basis
// U (det +-1) with reduced = old * U.
IntMatrix2 gauss_reduce(Mat2& basis) {
    IntMatrix2 u;
    for (int it = 0; it < 48; ++it) {
        if (basis.c1.dot(basis.c1) > basis.c2.dot(basis.c2)) {
            std::swap(basis.c1, basis.c2);
            u = u * IntMatrix2{0, 1, 1, 0};
        }
        const long t = std::lround(basis.c1.dot(basis.c2) /
                                   basis.c1.dot(basis.c1));
        if (t == 0) break;
        if (std::labs(t) > 1'000'000)
            throw NumericalError("degenerate basis in reduction");
        basis.c2 = basis.c2 - basis.c1 * static_cast<double>(t);
        u = u * IntMatrix2{1, -static_cast<int>(t), 0, 1};
    }
    return u;
}

IntMatrix2 inverse_unimodular(const IntMatrix2& m) {
    const int d = m.det();
    if (d != 1 && d != -1) throw NumericalError("matrix is not unimodular");
    return {d * m.d, -d * m.b, -d * m.c, d * m.a};
}

// Least-squares frame fit: points of the 3x3 neighborhood of `anchor` are
// assigned the integer coordinates nearest in the frame `basis`; accepted when
// the fractional part is within assoc_tol (lattice units). One worst outlier
// is dropped if the first fit exceeds tol. Returns false when fewer than
// min_pts points associate.
struct FrameFit {
    Vec2 anchor;
    Mat2 basis;
    double resid = 0.0;
    int npts = 0;
};

bool fit_frame(const SpatialHash& hash, const std::vector<Vec2>& pts,
               const Vec2& anchor, const Mat2& basis, double assoc_tol,
               int min_pts, double tol, FrameFit& out) {
    const double reach =
        2.2 * std::max(basis.c1.norm(), basis.c2.norm()) + 1e-12;
    std::vector<Vec2> nu;  // integer coordinates (stored exactly in doubles)
    std::vector<Vec2> pos;
    for (int i : hash.within(anchor, reach)) {
        const Vec2 lat = basis.solve(pts[i] - anchor);
        const double n1 = std::round(lat.x), n2 = std::round(lat.y);
        if (std::max(std::fabs(lat.x - n1), std::fabs(lat.y - n2)) > assoc_tol)
            continue;
        if (std::max(std::fabs(n1), std::fabs(n2)) > 1.0) continue;
        nu.push_back({n1, n2});
        pos.push_back(pts[i]);
    }

    auto solve_ls = [&](FrameFit& fit) {
        // Normal equations for p ~ a + n1*v1 + n2*v2 (3 unknowns per axis).
        double s0 = static_cast<double>(nu.size());
        double s1 = 0, s2 = 0, s11 = 0, s12 = 0, s22 = 0;
        Vec2 b0{}, b1{}, b2{};
        for (std::size_t i = 0; i < nu.size(); ++i) {
            s1 += nu[i].x;
            s2 += nu[i].y;
            s11 += nu[i].x * nu[i].x;
            s12 += nu[i].x * nu[i].y;
            s22 += nu[i].y * nu[i].y;
            b0 = b0 + pos[i];
            b1 = b1 + pos[i] * nu[i].x;
            b2 = b2 + pos[i] * nu[i].y;
        }
        // 3x3 SPD solve by Cramer.
        const double det = s0 * (s11 * s22 - s12 * s12) -
                           s1 * (s1 * s22 - s12 * s2) +
                           s2 * (s1 * s12 - s11 * s2);
        if (std::fabs(det) < 1e-12) return false;
        auto solve_axis = [&](double r0, double r1, double r2) {
            const double da = r0 * (s11 * s22 - s12 * s12) -
                              s1 * (r1 * s22 - s12 * r2) +
                              s2 * (r1 * s12 - s11 * r2);
            const double db = s0 * (r1 * s22 - s12 * r2) -
                              r0 * (s1 * s22 - s12 * s2) +
                              s2 * (s1 * r2 - r1 * s2);
            const double dc = s0 * (s11 * r2 - r1 * s12) -
                              s1 * (s1 * r2 - r1 * s2) +
                              r0 * (s1 * s12 - s11 * s2);
            return std::array<double, 3>{da / det, db / det, dc / det};
        };
        const auto cx = solve_axis(b0.x, b1.x, b2.x);
        const auto cy = solve_axis(b0.y, b1.y, b2.y);
        fit.anchor = {cx[0], cy[0]};
        fit.basis = {{cx[1], cy[1]}, {cx[2], cy[2]}};
        fit.resid = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const Vec2 pred =
                fit.anchor + fit.basis.apply(nu[i].x, nu[i].y);
            fit.resid = std::max(fit.resid, (pred - pos[i]).norm());
        }
        fit.npts = static_cast<int>(nu.size());
        return true;
    };

    if (static_cast<int>(nu.size()) < min_pts) return false;
    if (!solve_ls(out)) return false;
    if (out.resid >= tol && static_cast<int>(nu.size()) > min_pts) {
        // Drop the worst point once and refit.
        std::size_t worst = 0;
        double worst_d = -1.0;
        for (std::size_t i = 0; i < nu.size(); ++i) {
            const double d =
                (out.anchor + out.basis.apply(nu[i].x, nu[i].y) - pos[i])
                    .norm();
            if (d > worst_d) {
                worst_d = d;
                worst = i;
            }
        }
        nu.erase(nu.begin() + worst);
        pos.erase(pos.begin() + worst);
        if (!solve_ls(out)) return false;
    }
    return true;
}

}  // namespace

LatticeCell estimate_cell(std::span<const Vec2> cloud, const Vec2& anchor_hint,
                          const Vec2& scale) {
    if (cloud.size() < 8) throw NumericalError("not locally a lattice");
    const auto pts = rescale(cloud, scale);
    const Vec2 hint{anchor_hint.x / scale.x, anchor_hint.y / scale.y};

    // Nearest point to the hint and its 16 nearest neighbors, by brute force
    // (one-off query; transport uses the hash).
    int ai = 0;
    double ad = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double d = (pts[i] - hint).norm();
        if (d < ad) {
            ad = d;
            ai = static_cast<int>(i);
        }
    }
    const Vec2 a = pts[ai];
    std::vector<std::pair<double, int>> by_dist;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (static_cast<int>(i) == ai) continue;
        by_dist.push_back({(pts[i] - a).norm(), static_cast<int>(i)});
    }
    const std::size_t keep = std::min<std::size_t>(16, by_dist.size());
    std::partial_sort(by_dist.begin(), by_dist.begin() + keep, by_dist.end());
    by_dist.resize(keep);

    auto nearest_dist = [&](const Vec2& q) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) best = std::min(best, (p - q).norm());
        return best;
    };

    for (std::size_t i = 0; i < by_dist.size(); ++i) {
        const Vec2 v1 = pts[by_dist[i].second] - a;
        for (std::size_t j = i + 1; j < by_dist.size(); ++j) {
            const Vec2 v2 = pts[by_dist[j].second] - a;
            // Independence: v2 must stand off the v1 line by half |v1|.
            if (std::fabs(v1.cross(v2)) < 0.5 * v1.dot(v1)) continue;
            // The fourth parallelogram corner must be present.
            const double tol = 0.35 * std::min(v1.norm(), v2.norm());
            if (nearest_dist(a + v1 + v2) >= tol) continue;
            return {{a.x * scale.x, a.y * scale.y},
                    {v1.x * scale.x, v1.y * scale.y},
                    {v2.x * scale.x, v2.y * scale.y}};
        }
    }
    throw NumericalError("not locally a lattice");
}

TransportResult transport_cell(std::span<const Vec2> cloud,
                               const LatticeCell& cell0,
                               std::span<const Vec2> loop, const Vec2& scale,
                               const TransportOptions& opt) {
    if (loop.size() < 3) throw NumericalError("transport loop too short");
    const auto pts = rescale(cloud, scale);
    Mat2 basis{{cell0.v1.x / scale.x, cell0.v1.y / scale.y},
               {cell0.v2.x / scale.x, cell0.v2.y / scale.y}};
    if (basis.det() == 0.0) throw NumericalError("degenerate starting cell");

    const SpatialHash hash(pts, std::max(basis.c1.norm(), basis.c2.norm()));

    auto station = [&](const Vec2& vertex_orig, Mat2& b, FrameFit& fit) {
        const Vec2 q{vertex_orig.x / scale.x, vertex_orig.y / scale.y};
        const auto [ai, ad] = hash.nearest(q);
        const double tol = opt.snap_fraction * b.min_edge();
        if (!fit_frame(hash, pts, pts[ai], b, opt.snap_fraction,
                       opt.min_fit_points, tol, fit))
            return false;
        return fit.resid < tol;
    };

    // Navigation happens entirely in reduced frames so that the systematic
    // part of the fit bias is the same at the first and last station (same
    // anchor, same window shape) and cancels in the holonomy. The reduction
    // of the caller's basis is undone by integer conjugation at the end.
    const IntMatrix2 u0 = gauss_reduce(basis);
    FrameFit fit;
    if (!station(loop[0], basis, fit))
        throw NumericalError("not locally a lattice at loop start");
    Mat2 b0 = fit.basis;
    Mat2 b = b0;
    IntMatrix2 bookkeeping;  // transported basis = navigation basis * K

    TransportResult result;
    const Mat2 b0_input{b0.apply(inverse_unimodular(u0).a,
                                 inverse_unimodular(u0).c),
                        b0.apply(inverse_unimodular(u0).b,
                                 inverse_unimodular(u0).d)};
    result.initial_cell = {
        {fit.anchor.x * scale.x, fit.anchor.y * scale.y},
        {b0_input.c1.x * scale.x, b0_input.c1.y * scale.y},
        {b0_input.c2.x * scale.x, b0_input.c2.y * scale.y}};
    result.residuals.reserve(loop.size());

    const std::size_t n = loop.size();
    for (std::size_t k = 1; k <= n; ++k) {
        const IntMatrix2 u = gauss_reduce(b);
        bookkeeping = inverse_unimodular(u) * bookkeeping;
        if (!station(loop[k % n], b, fit))
            throw NumericalError("transport broke at step " + std::to_string(k));
        b = fit.basis;
        result.residuals.push_back(fit.resid);
    }
    result.steps = static_cast<int>(n);

    // Undo the in-flight reductions: T = B * K continues b0 around the loop.
    const Mat2 b_final{
        b.apply(bookkeeping.a, bookkeeping.c),
        b.apply(bookkeeping.b, bookkeeping.d)};
    const Vec2 m1 = b0.solve(b_final.c1);
    const Vec2 m2 = b0.solve(b_final.c2);
    const double entries[4] = {m1.x, m2.x, m1.y, m2.y};
    int rounded[4];
    for (int i = 0; i < 4; ++i) {
        rounded[i] = static_cast<int>(std::lround(entries[i]));
        if (std::fabs(entries[i] - rounded[i]) >= opt.round_tol)
            throw NumericalError("non-integral holonomy");
    }
    // Conjugate from the reduced navigation basis back to the caller's.
    const IntMatrix2 m_reduced{rounded[0], rounded[1], rounded[2], rounded[3]};
    result.matrix = u0 * m_reduced * inverse_unimodular(u0);
    if (std::abs(result.matrix.det()) != 1)
        throw NumericalError("holonomy determinant is not +-1");
    const Mat2 t_input{
        b_final.apply(inverse_unimodular(u0).a, inverse_unimodular(u0).c),
        b_final.apply(inverse_unimodular(u0).b, inverse_unimodular(u0).d)};
    result.final_cell = {
        result.initial_cell.anchor,
        {t_input.c1.x * scale.x, t_input.c1.y * scale.y},
        {t_input.c2.x * scale.x, t_input.c2.y * scale.y}};
    return result;
}

ConjugacyInvariants conjugacy_invariants(const classical::IntMatrix2& m) {
    const int d = m.det();
    if (d != 1 && d != -1)
        throw NumericalError("conjugacy_invariants: det must be +-1");
    // (M - I)^2 = 0 together with M != I.
    const classical::IntMatrix2 shifted{m.a - 1, m.b, m.c, m.d - 1};
    const classical::IntMatrix2 squared = shifted * shifted;
    const bool nilpotent = squared == classical::IntMatrix2{0, 0, 0, 0};
    const bool identity = m == classical::IntMatrix2{};
    return {m.trace(), d, nilpotent && !identity};
}

}  // namespace cbottle::lattice
