#include "qplane/mode_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <limits>
#include <string>

#include "dft.hpp"
#include "qplane/error.hpp"

namespace qplane {
namespace {

void require_same_lattice(const ModeFunction& a, const ModeFunction& b) {
  if (!(a.lattice() == b.lattice()))
    throw ConfigError("mode functions live on different lattices");
}

// Index of mode l in an n-point DFT.
std::size_t wrap(int l, int n) {
  const int r = l % n;
  return static_cast<std::size_t>(r < 0 ? r + n : r);
}

}  // namespace

Complex ModeFunction::coeff(int k, int l) const {
  auto it = coeffs_.find(Mode{k, l});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void ModeFunction::add(int k, int l, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace(Mode{k, l}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

void ModeFunction::set(int k, int l, Complex c) {
  if (c == Complex{})
    coeffs_.erase(Mode{k, l});
  else
    coeffs_[Mode{k, l}] = c;
}

IndexWindow ModeFunction::k_support() const {
  if (coeffs_.empty()) return {};
  // map order is lexicographic in (k, l)
  return {coeffs_.begin()->first.k, coeffs_.rbegin()->first.k};
}

int ModeFunction::max_abs_l() const {
  int m = 0;
  for (const auto& [mode, c] : coeffs_) m = std::max(m, std::abs(mode.l));
  return m;
}

double ModeFunction::max_abs() const {
  double m = 0.0;
  for (const auto& [mode, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex ModeFunction::evaluate(const CirclePoint& p) const {
  Complex sum = 0.0;
  auto it = coeffs_.lower_bound(Mode{p.k(), std::numeric_limits<int>::min()});
  for (; it != coeffs_.end() && it->first.k == p.k(); ++it)
    sum += it->second * std::polar(1.0, it->first.l * p.theta());
  return sum;
}

ModeFunction ModeFunction::restricted(IndexWindow window) const {
  ModeFunction out(lattice_);
  for (const auto& [mode, c] : coeffs_)
    if (window.contains(mode.k)) out.coeffs_.emplace_hint(out.coeffs_.end(), mode, c);
  return out;
}

ModeFunction& ModeFunction::operator+=(const ModeFunction& other) {
  require_same_lattice(*this, other);
  for (const auto& [mode, c] : other.coeffs_) add(mode.k, mode.l, c);
  return *this;
}

ModeFunction& ModeFunction::operator-=(const ModeFunction& other) {
  require_same_lattice(*this, other);
  for (const auto& [mode, c] : other.coeffs_) add(mode.k, mode.l, -c);
  return *this;
}

ModeFunction& ModeFunction::operator*=(Complex s) {
  if (s == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    it->second *= s;
    it = it->second == Complex{} ? coeffs_.erase(it) : std::next(it);
  }
  return *this;
}

SampledFunction::SampledFunction(QLattice lattice, IndexWindow window, int n_theta)
    : lattice_(lattice), window_(window), n_theta_(n_theta) {
  if (window.empty()) throw ConfigError("sampling window is empty");
  if (n_theta <= 0 || n_theta % 2 != 0)
    throw ConfigError("n_theta must be a positive even number, got " + std::to_string(n_theta));
  values_.assign(static_cast<std::size_t>(window.size()) * static_cast<std::size_t>(n_theta), Complex{});
}

Complex& SampledFunction::at(int k, int j) {
  return values_.at(static_cast<std::size_t>(k - window_.lo) * n_theta_ + static_cast<std::size_t>(j));
}

const Complex& SampledFunction::at(int k, int j) const {
  return values_.at(static_cast<std::size_t>(k - window_.lo) * n_theta_ + static_cast<std::size_t>(j));
}

std::span<const Complex> SampledFunction::circle(int k) const {
  if (!window_.contains(k)) throw WindowError("circle " + std::to_string(k) + " outside sample window");
  return std::span<const Complex>(values_).subspan(static_cast<std::size_t>(k - window_.lo) * n_theta_,
                                                   static_cast<std::size_t>(n_theta_));
}

std::span<Complex> SampledFunction::circle(int k) {
  if (!window_.contains(k)) throw WindowError("circle " + std::to_string(k) + " outside sample window");
  return std::span<Complex>(values_).subspan(static_cast<std::size_t>(k - window_.lo) * n_theta_,
                                             static_cast<std::size_t>(n_theta_));
}

ModeFunction basis(const QLattice& lattice, int k, int l) {
  ModeFunction f(lattice);
  f.set(k, l, 1.0);
  return f;
}

double max_abs_diff(const ModeFunction& a, const ModeFunction& b) {
  require_same_lattice(a, b);
  double m = 0.0;
  for (const auto& [mode, c] : a.coeffs()) m = std::max(m, std::abs(c - b.coeff(mode)));
  for (const auto& [mode, c] : b.coeffs())
    if (a.coeffs().find(mode) == a.coeffs().end()) m = std::max(m, std::abs(c));
  return m;
}

SampledFunction to_samples(const ModeFunction& f, IndexWindow window, int n_theta) {
  if (n_theta <= 2 * f.max_abs_l())
    throw AliasingError("n_theta = " + std::to_string(n_theta) + " cannot resolve angular mode " +
                        std::to_string(f.max_abs_l()) + " (need n_theta > 2*max|l|)");
  SampledFunction s(f.lattice(), window, n_theta);
  std::vector<Complex> spectrum(static_cast<std::size_t>(n_theta));
  for (int k = window.lo; k <= window.hi; ++k) {
    std::fill(spectrum.begin(), spectrum.end(), Complex{});
    for (const auto& [mode, c] : f.coeffs())
      if (mode.k == k) spectrum[wrap(mode.l, n_theta)] = c;
    detail::dft(spectrum, s.circle(k), detail::DftSign::Plus);
  }
  return s;
}

ModeFunction from_samples(const SampledFunction& s, int l_max) {
  const int n = s.n_theta();
  if (l_max < 0) throw ConfigError("l_max must be non-negative");
  if (n <= 2 * l_max)
    throw AliasingError("n_theta = " + std::to_string(n) + " cannot resolve angular mode " +
                        std::to_string(l_max) + " (need n_theta > 2*l_max)");
  ModeFunction f(s.lattice());
  std::vector<Complex> spectrum(static_cast<std::size_t>(n));
  for (int k = s.window().lo; k <= s.window().hi; ++k) {
    detail::dft(s.circle(k), spectrum, detail::DftSign::Minus);
    for (int l = -l_max; l <= l_max; ++l) f.add(k, l, spectrum[wrap(l, n)] / static_cast<double>(n));
  }
  return f;
}

ModeFunction multiply(const ModeFunction& f, const ModeFunction& g) {
  require_same_lattice(f, g);
  ModeFunction out(f.lattice());
  auto gi = g.coeffs().begin();
  for (auto fi = f.coeffs().begin(); fi != f.coeffs().end();) {
    const int k = fi->first.k;
    auto f_end = fi;
    while (f_end != f.coeffs().end() && f_end->first.k == k) ++f_end;
    while (gi != g.coeffs().end() && gi->first.k < k) ++gi;
    auto g_end = gi;
    while (g_end != g.coeffs().end() && g_end->first.k == k) ++g_end;
    if (gi != g_end) {
      // map order puts the smallest l first on each circle
      const int lo = fi->first.l + gi->first.l;
      const int hi = std::prev(f_end)->first.l + std::prev(g_end)->first.l;
      std::vector<Complex> acc(static_cast<std::size_t>(hi - lo + 1));
      for (auto a = fi; a != f_end; ++a)
        for (auto b = gi; b != g_end; ++b)
          acc[static_cast<std::size_t>(a->first.l + b->first.l - lo)] += a->second * b->second;
      for (int l = lo; l <= hi; ++l) out.add(k, l, acc[static_cast<std::size_t>(l - lo)]);
    }
    fi = f_end;
    gi = g_end;
  }
  return out;
}

ModeFunction conjugate(const ModeFunction& f) {
  ModeFunction out(f.lattice());
  for (const auto& [mode, c] : f.coeffs()) out.set(mode.k, -mode.l, std::conj(c));
  return out;
}

Complex integrate_mu(const ModeFunction& f) {
  const QLattice& lat = f.lattice();
  return integrate_weighted(f, [&](int k) { return lat.mu_weight(k); });
}

Complex inner_product(const ModeFunction& f, const ModeFunction& g) {
  require_same_lattice(f, g);
  Complex sum = 0.0;
  auto gi = g.coeffs().begin();
  for (const auto& [mode, c] : f.coeffs()) {
    while (gi != g.coeffs().end() && gi->first < mode) ++gi;
    if (gi == g.coeffs().end()) break;
    if (gi->first == mode) sum += f.lattice().mu_weight(mode.k) * std::conj(c) * gi->second;
  }
  return sum;
}

double norm(const ModeFunction& f) {
  double sum = 0.0;
  for (const auto& [mode, c] : f.coeffs()) sum += f.lattice().mu_weight(mode.k) * std::norm(c);
  return std::sqrt(sum);
}

}  // namespace qplane
