#include "qplane/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qplane/detail/parallel.hpp"
#include "qplane/error.hpp"

namespace qplane {
namespace {

std::string window_str(IndexWindow w) {
  return "[" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "]";
}

IndexWindow intersect(IndexWindow a, IndexWindow b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

double row_norm(const ModeFunction& g, int k) {
  double sum = 0.0;
  auto it = g.coeffs().lower_bound(Mode{k, std::numeric_limits<int>::min()});
  for (; it != g.coeffs().end() && it->first.k == k; ++it) sum += std::norm(it->second);
  return std::sqrt(g.lattice().mu_weight(k) * sum);
}

// One edge of the geometric tail extrapolation: outermost row r_out, next row
// r_in, ratio ρ = r_out / r_in capped at 0.9, tail ≈ r_out·ρ/√(1−ρ²).
double edge_tail(double r_out, double r_in) {
  if (r_out == 0.0) return 0.0;
  constexpr double kMaxRatio = 0.9;
  const double rho = r_in > 0.0 ? std::min(r_out / r_in, kMaxRatio) : kMaxRatio;
  return r_out * rho / std::sqrt(1.0 - rho * rho);
}

double tail_estimate(const ModeFunction& g, IndexWindow w) {
  if (w.empty()) return 0.0;
  const double hi = edge_tail(row_norm(g, w.hi), w.size() > 1 ? row_norm(g, w.hi - 1) : 0.0);
  const double lo = edge_tail(row_norm(g, w.lo), w.size() > 1 ? row_norm(g, w.lo + 1) : 0.0);
  return std::hypot(hi, lo);
}

enum class Side { Forward, Adjoint };

TransformResult apply_kernel(const ModeFunction& f, const FourierData& data,
                             std::optional<IndexWindow> out_window, KernelPolicy policy, Side side) {
  if (!(f.lattice() == data.lattice())) throw ConfigError("function and kernel use different q");
  TransformResult result{ModeFunction(f.lattice()), {}, 0.0};
  const IndexWindow out = out_window ? *out_window : default_out_window(f, data);
  result.out_window = out;
  if (f.empty()) return result;
  if (out.empty())
    throw WindowError("kernel radial window " + window_str(data.n_window()) +
                      " is too small for input support " + window_str(f.k_support()));

  const QLattice& lat = f.lattice();
  // Forward: (ℱf)_{m,-l} += q^{2k} a_{m+k,l} f_{k,l}
  // Adjoint: (ℱ*h)_{n,-l} += q^{2m} conj(a_{m+n,-l}) h_{m,l}
  auto kernel_l = [side](int l) { return side == Side::Forward ? l : -l; };
  if (policy == KernelPolicy::Strict) {
    const IndexWindow supp = f.k_support();
    for (const auto& [mode, c] : f.coeffs()) {
      if (!data.l_window().contains(kernel_l(mode.l)))
        throw WindowError("kernel angular window " + window_str(data.l_window()) + " lacks mode " +
                          std::to_string(kernel_l(mode.l)));
    }
    if (!data.n_window().contains(out.lo + supp.lo) || !data.n_window().contains(out.hi + supp.hi))
      throw WindowError("output window " + window_str(out) + " needs kernel circles " +
                        window_str({out.lo + supp.lo, out.hi + supp.hi}) + " but the table holds " +
                        window_str(data.n_window()));
  }

  std::vector<std::vector<std::pair<int, Complex>>> rows(static_cast<std::size_t>(out.size()));
  detail::parallel_for(rows.size(), [&](std::size_t r) {
    const int m = out.lo + static_cast<int>(r);
    std::vector<std::pair<int, Complex>> acc;
    for (const auto& [mode, c] : f.coeffs()) {
      const int n = m + mode.k;
      const int kl = kernel_l(mode.l);
      if (!data.has(n, kl)) continue;  // Strict already verified coverage
      const Complex a = side == Side::Forward ? data.a(n, kl) : std::conj(data.a(n, kl));
      const Complex term = lat.mu_weight(mode.k) * a * c;
      if (!acc.empty() && acc.back().first == -mode.l)
        acc.back().second += term;
      else
        acc.emplace_back(-mode.l, term);
    }
    rows[r] = std::move(acc);
  });

  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [l, c] : rows[r]) result.value.add(out.lo + static_cast<int>(r), l, c);
  result.tail_estimate = tail_estimate(result.value, out);
  return result;
}

}  // namespace

FourierData::FourierData(QLattice lattice, IndexWindow n_window, IndexWindow l_window, int n_theta,
                         std::vector<CircleCoefficients> circles)
    : lattice_(lattice), n_window_(n_window), l_window_(l_window), n_theta_(n_theta), circles_(std::move(circles)) {
  if (n_window.empty() || l_window.empty()) throw ConfigError("kernel windows must be nonempty");
  if (circles_.size() != static_cast<std::size_t>(n_window.size()))
    throw ConfigError("kernel table does not match its radial window");
}

Complex FourierData::a(int n, int l) const {
  if (!has(n, l))
    throw WindowError("kernel coefficient a(" + std::to_string(n) + ", " + std::to_string(l) +
                      ") outside table " + window_str(n_window_) + " x " + window_str(l_window_));
  return circles_[static_cast<std::size_t>(n - n_window_.lo)].at(l);
}

double FourierData::max_parseval_defect() const {
  double m = 0.0;
  for (const auto& c : circles_) m = std::max(m, c.parseval_defect);
  return m;
}

FourierData build_fourier_data(const QLattice& lattice, IndexWindow n_window, IndexWindow l_window,
                               int n_theta, double tol) {
  if (n_window.empty() || l_window.empty()) throw ConfigError("kernel windows must be nonempty");
  const FqEvaluator fq(lattice, tol);
  std::vector<CircleCoefficients> circles(static_cast<std::size_t>(n_window.size()));
  detail::parallel_for(circles.size(), [&](std::size_t i) {
    CircleCoefficients c = fq.circle_coeffs(n_window.lo + static_cast<int>(i), l_window, n_theta);
    for (auto& a : c.a)
      if (std::abs(a) < FourierData::kNoiseFloor) a = 0.0;
    circles[i] = std::move(c);
  });
  return FourierData(lattice, n_window, l_window, n_theta, std::move(circles));
}

IndexWindow default_out_window(const ModeFunction& f, const FourierData& data) {
  if (f.empty()) return data.n_window();
  const IndexWindow s = f.k_support();
  return {data.n_window().lo - s.lo, data.n_window().hi - s.hi};
}

TransformResult fourier_apply(const ModeFunction& f, const FourierData& data,
                              std::optional<IndexWindow> out_window, KernelPolicy policy) {
  return apply_kernel(f, data, out_window, policy, Side::Forward);
}

TransformResult fourier_adjoint_apply(const ModeFunction& h, const FourierData& data,
                                      std::optional<IndexWindow> out_window, KernelPolicy policy) {
  return apply_kernel(h, data, out_window, policy, Side::Adjoint);
}

std::vector<Complex> evaluate_at(const ModeFunction& f, std::span<const CirclePoint> points) {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(f.evaluate(p));
  return out;
}

std::vector<Complex> fourier_direct_quadrature(const ModeFunction& f, std::span<const CirclePoint> points,
                                               int n_theta, IndexWindow radial_window, const FqEvaluator& fq) {
  if (n_theta <= 0) throw ConfigError("n_theta must be positive");
  const QLattice& lat = f.lattice();
  std::vector<Complex> values(points.size());
  detail::parallel_for(points.size(), [&](std::size_t i) {
    const CirclePoint& zeta = points[i];
    Complex total = 0.0;
    for (int k = radial_window.lo; k <= radial_window.hi; ++k) {
      Complex circle_sum = 0.0;
      bool any = false;
      for (int j = 0; j < n_theta; ++j) {
        const CirclePoint z(k, kTwoPi * j / n_theta);
        const Complex fz = f.evaluate(z);
        if (fz == Complex{}) continue;
        any = true;
        circle_sum += fq.point(zeta * z) * fz;
      }
      if (any) total += lat.mu_weight(k) * circle_sum / static_cast<double>(n_theta);
    }
    values[i] = total;
  });
  return values;
}

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::Z: return "Z";
    case Relation::ZBAR: return "ZBAR";
    case Relation::LZ: return "LZ";
    case Relation::LZBAR: return "LZBAR";
    case Relation::RZ: return "RZ";
    case Relation::RZBAR: return "RZBAR";
    case Relation::DILATE_INV: return "DILATE_INV";
    case Relation::DILATE: return "DILATE";
    case Relation::SIGMA: return "SIGMA";
  }
  return "?";
}

namespace {

struct RelationSides {
  ModeFunction (*lhs)(const ModeFunction&);
  int reach_lo;  // LHS output row k reads input row k - reach_lo
  int reach_hi;  // ... and row k + reach_hi
};

RelationSides relation_lhs(Relation id) {
  switch (id) {
    case Relation::Z: return {[](const ModeFunction& h) { return mult_coord(h, Coord::Z); }, 0, 0};
    case Relation::ZBAR: return {[](const ModeFunction& h) { return mult_coord(h, Coord::ZBAR); }, 0, 0};
    case Relation::LZ: return {[](const ModeFunction& h) { return q_diff(h, QDiff::LZ); }, 0, 1};
    case Relation::LZBAR: return {[](const ModeFunction& h) { return q_diff(h, QDiff::LZBAR); }, 1, 0};
    case Relation::RZ: return {[](const ModeFunction& h) { return q_diff(h, QDiff::RZ); }, 1, 0};
    case Relation::RZBAR: return {[](const ModeFunction& h) { return q_diff(h, QDiff::RZBAR); }, 0, 1};
    case Relation::DILATE_INV: return {[](const ModeFunction& h) { return shift(h, -1, -1); }, 1, 0};
    case Relation::DILATE: return {[](const ModeFunction& h) { return shift(h, 1, -1); }, 0, 1};
    case Relation::SIGMA: return {[](const ModeFunction& h) { return shift(h, 0, -1); }, 0, 0};
  }
  return {nullptr, 0, 0};
}

// The function whose transform forms the right-hand side, scalar included.
ModeFunction relation_rhs_input(Relation id, const ModeFunction& f) {
  const double q2 = f.q() * f.q();
  const double q4 = q2 * q2;
  switch (id) {
    case Relation::Z: return (1.0 / q2 - 1.0) * q_diff(f, QDiff::RZ);
    case Relation::ZBAR: return -(q2 - q4) * q_diff(f, QDiff::RZBAR);
    case Relation::LZ: return (-1.0 / (1.0 - q2)) * mult_coord(f, Coord::Z);
    case Relation::LZBAR: return (1.0 / (1.0 - q2)) * mult_coord(f, Coord::ZBAR);
    case Relation::RZ: return (-q4 / (1.0 - q2)) * mult_coord(shift(f, 1, 1), Coord::Z);
    case Relation::RZBAR: return (1.0 / (q4 * (1.0 - q2))) * mult_coord(shift(f, -1, 1), Coord::ZBAR);
    case Relation::DILATE_INV: return q2 * shift(f, 1, 1);
    case Relation::DILATE: return (1.0 / q2) * shift(f, -1, 1);
    case Relation::SIGMA: return shift(f, 0, 1);
  }
  return f;
}

}  // namespace

RelationResidual relation_residual(Relation id, const ModeFunction& f, const FourierData& data) {
  RelationResidual res;
  if (f.empty()) return res;
  const RelationSides sides = relation_lhs(id);
  const ModeFunction g = relation_rhs_input(id, f);
  const IndexWindow out = intersect(default_out_window(f, data), default_out_window(g, data));
  const IndexWindow interior{out.lo + sides.reach_lo, out.hi - sides.reach_hi};
  if (interior.empty())
    throw WindowError("relation " + std::string(to_string(id)) + ": kernel radial window " +
                      window_str(data.n_window()) + " leaves no comparison circles for support " +
                      window_str(f.k_support()));
  res.window = interior;

  const ModeFunction lhs = sides.lhs(fourier_apply(f, data, out).value).restricted(interior);
  const ModeFunction rhs = fourier_apply(g, data, out).value.restricted(interior);
  const double scale = norm(rhs);
  const double diff = norm(lhs - rhs);
  if (scale == 0.0) {
    res.interior = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return res;
  }
  res.interior = diff / scale;
  res.tail = (tail_estimate(lhs, interior) + tail_estimate(rhs, interior)) / scale;
  return res;
}

PlancherelResidual plancherel_residual(int k, int l, const FourierData& data, int out_radius) {
  const QLattice& lat = data.lattice();
  const ModeFunction g = basis(lat, k, l);
  const TransformResult fg = fourier_apply(g, data);
  const IndexWindow out{k - out_radius, k + out_radius};
  const ModeFunction back = fourier_adjoint_apply(fg.value, data, out, KernelPolicy::Truncate).value;

  const double lambda = lat.pow(2 - 2 * l);
  PlancherelResidual res;
  res.relative = norm(back - lambda * g) / norm(lambda * g);
  res.eigenvalue_ratio = back.coeff(k, l) / lambda;
  for (const auto& [mode, c] : back.coeffs())
    if (mode.k != k) res.cross = std::max(res.cross, std::abs(c) / lambda);
  return res;
}

double unitarity_defect(IndexWindow k_window, IndexWindow l_window, const FourierData& data) {
  const QLattice& lat = data.lattice();
  struct Image {
    int k;
    int l;
    ModeFunction u;
  };
  std::vector<Image> images;
  for (int l = l_window.lo; l <= l_window.hi; ++l)
    for (int k = k_window.lo; k <= k_window.hi; ++k) {
      // U g = q^{-1} ℱ(σ_i g) = q^{l-1} ℱ g
      const ModeFunction g = basis(lat, k, l);
      images.push_back({k, l, fourier_apply(sigma_i(g), data).value * Complex(1.0 / lat.q())});
    }
  double defect = 0.0;
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = a; b < images.size(); ++b) {
      const Image& x = images[a];
      const Image& y = images[b];
      const double target = (x.k == y.k && x.l == y.l) ? lat.mu_weight(x.k) : 0.0;
      const double scale = lat.pow(x.k) * lat.pow(y.k);
      defect = std::max(defect, std::abs(inner_product(x.u, y.u) - target) / scale);
    }
  return defect;
}

}  // namespace qplane
