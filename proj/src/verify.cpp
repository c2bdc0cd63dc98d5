#include "qplane/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "json_out.hpp"
#include "qplane/error.hpp"
#include "qplane/forms.hpp"
#include "qplane/fourier.hpp"
#include "qplane/io.hpp"
#include "qplane/random.hpp"

namespace qplane {
namespace {

constexpr std::string_view kVersion = "0.1.0";

// Test functions of the Fourier suite live on this window.
constexpr IndexWindow kFourierK{-3, 3};
constexpr IndexWindow kFourierL{-4, 4};
// Relations move l by at most one step.
constexpr int kFourierLReach = 5;

double rel_diff(const ModeFunction& a, const ModeFunction& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? 0.0 : max_abs_diff(a, b) / scale;
}

double rel_diff(const Form1& a, const Form1& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  return scale == 0.0 ? 0.0 : max_abs_diff(a, b) / scale;
}

double rel_diff(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// |Σ w_k c_{k,0}| / Σ w_k |c_{k,0}|: relative size of a weighted integral
// against the mass it sums.
template <class WeightFn>
double weighted_integral_ratio(const ModeFunction& f, WeightFn&& weight) {
  Complex sum = 0.0;
  double mass = 0.0;
  for (const auto& [mode, c] : f.coeffs()) {
    if (mode.l != 0) continue;
    sum += weight(mode.k) * c;
    mass += weight(mode.k) * std::abs(c);
  }
  return mass == 0.0 ? 0.0 : std::abs(sum) / mass;
}

// Generator actions on g_{k,l}, transcribed as a closed formula.
ModeFunction generator_action(const QLattice& lat, QDiff op, int k, int l) {
  const double q2 = lat.q() * lat.q();
  const double c_r = 1.0 / (1.0 / q2 - 1.0);
  const double c_l = 1.0 / (1.0 - q2);
  ModeFunction out(lat);
  switch (op) {
    case QDiff::RZ:
      out.add(k + 1, l - 1, c_r * lat.pow(-l - (k + 1)));
      out.add(k, l - 1, -c_r * lat.pow(-k));
      break;
    case QDiff::LZ:
      out.add(k, l - 1, c_l * lat.pow(-k));
      out.add(k - 1, l - 1, -c_l * lat.pow(l - (k - 1)));
      break;
    case QDiff::RZBAR:
      out.add(k, l + 1, c_l * lat.pow(-k));
      out.add(k - 1, l + 1, -c_l * lat.pow(-l - (k - 1)));
      break;
    case QDiff::LZBAR:
      out.add(k + 1, l + 1, c_r * lat.pow(l - (k + 1)));
      out.add(k, l + 1, -c_r * lat.pow(-k));
      break;
  }
  return out;
}

constexpr QDiff kAllDiffs[] = {QDiff::RZ, QDiff::LZ, QDiff::RZBAR, QDiff::LZBAR};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct FourierWindowSpec {
  int half_width;
  int l_half_width;
  int n_theta;
};

int kernel_l_half_width(const VerifyConfig& c, int n_theta) {
  // keep n_theta ≥ 4·(2L + 1)
  return std::min(c.lmax + 4, (n_theta / 4 - 1) / 2);
}

FourierData build_for(const QLattice& lat, const FourierWindowSpec& w) {
  return build_fourier_data(lat, {-w.half_width, w.half_width}, {-w.l_half_width, w.l_half_width}, w.n_theta);
}

struct FourierFamilies {
  std::vector<RelationResidual> relations;  // worst total per relation
  double plancherel = 0.0;
  double plancherel_cross = 0.0;
  double unitarity = 0.0;
  double parseval = 0.0;
};

FourierFamilies fourier_families(const QLattice& lat, const FourierData& data) {
  FourierFamilies fam;
  for (Relation r : kAllRelations) {
    RelationResidual worst;
    for (int k = kFourierK.lo; k <= kFourierK.hi; ++k)
      for (int l = kFourierL.lo; l <= kFourierL.hi; ++l) {
        const RelationResidual rr = relation_residual(r, basis(lat, k, l), data);
        if (rr.total() > worst.total()) worst = rr;
        worst.interior = std::max(worst.interior, rr.interior);
      }
    fam.relations.push_back(worst);
  }
  for (int k = -2; k <= 2; ++k)
    for (int l = -3; l <= 3; ++l) {
      const PlancherelResidual p = plancherel_residual(k, l, data);
      fam.plancherel = std::max(fam.plancherel, p.relative);
      fam.plancherel_cross = std::max(fam.plancherel_cross, p.cross);
    }
  fam.unitarity = unitarity_defect({-2, 2}, {-3, 3}, data);
  fam.parseval = data.max_parseval_defect();
  return fam;
}

bool strictly_decreasing(const std::vector<double>& s) {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] < s[i - 1])) return false;
  return true;
}

class Runner {
 public:
  explicit Runner(const VerifyConfig& config)
      : c_(config), lat_(config.q), rng_(config.seed) {
    for (int i = 0; i < c_.n_random; ++i)
      random_.push_back(random_mode_function(lat_, c_.k_window(), c_.l_window(), rng_));
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

  void run(Suite s) {
    switch (s) {
      case Suite::Measure: measure(); break;
      case Suite::Calculus: calculus(); break;
      case Suite::Forms: forms(); break;
      case Suite::Fq: fq(); break;
      case Suite::Fourier: fourier(); break;
    }
  }

 private:
  using Params = std::vector<std::pair<std::string, double>>;

  CheckRecord& add(std::string id, std::string anchor, double residual, double threshold,
                   Compare cmp = Compare::AtMost, Params params = {}) {
    CheckRecord r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.residual = residual;
    r.threshold = threshold;
    r.compare = cmp;
    r.pass = cmp == Compare::AtMost ? residual <= threshold : residual >= threshold;
    r.params = std::move(params);
    records_.push_back(std::move(r));
    return records_.back();
  }

  // Runs body; a library error turns into a failed record under `id`.
  void guarded(const std::string& id, const std::string& anchor, double threshold, const std::function<void()>& body,
               Params params = {}) {
    try {
      body();
    } catch (const Error& e) {
      CheckRecord& r = add(id, anchor, std::nan(""), threshold, Compare::AtMost, std::move(params));
      r.pass = false;
      r.error = e.what();
    }
  }

  template <class Fn>
  double max_over_random(Fn&& fn) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < random_.size(); ++i) worst = std::max(worst, fn(i));
    return worst;
  }
  const ModeFunction& rf(std::size_t i) const { return random_[i % random_.size()]; }

  // ---------------------------------------------------------------- measure
  void measure() {
    const double tol = c_.tol_exact;
    const double q = c_.q;

    guarded("measure.chi.modulus", "bicharacter is unimodular", 1e-15, [&] {
      GaussianSource rng(c_.seed ^ 0x1001);
      double worst = 0.0, sym = 0.0, mult = 0.0;
      auto point = [&] {
        const int k = c_.kmin + static_cast<int>(rng.uniform() * (c_.kmax - c_.kmin + 1));
        return CirclePoint(k, kTwoPi * rng.uniform());
      };
      for (int i = 0; i < 100; ++i) {
        const CirclePoint a = point(), b = point(), d = point();
        worst = std::max(worst, std::abs(std::abs(chi(a, b)) - 1.0));
        sym = std::max(sym, std::abs(chi(a, b) - chi(b, a)));
        mult = std::max(mult, std::abs(chi(a * b, d) - chi(a, d) * chi(b, d)));
      }
      add("measure.chi.modulus", "bicharacter is unimodular", worst, 1e-15);
      add("measure.chi.symmetry", "bicharacter is symmetric", sym, tol);
      add("measure.chi.multiplicative", "bicharacter is multiplicative in each argument", mult, tol);
    });

    guarded("measure.mu_weight.recursion", "circle weights scale by q^2 per step", tol, [&] {
      double worst = 0.0;
      for (int k = c_.kmin; k < c_.kmax; ++k)
        worst = std::max(worst, rel_diff(lat_.mu_weight(k + 1), q * q * lat_.mu_weight(k)));
      add("measure.mu_weight.recursion", "circle weights scale by q^2 per step", worst, tol);
    });

    guarded("measure.orthogonality", "basis functions are orthogonal with norms q^{2k}", tol, [&] {
      double worst = 0.0;
      for (int k = c_.kmin; k <= c_.kmax; ++k)
        for (int l = -c_.lmax; l <= c_.lmax; ++l) {
          const ModeFunction a = basis(lat_, k, l);
          for (int k2 = k; k2 <= c_.kmax; ++k2)
            for (int l2 = -c_.lmax; l2 <= c_.lmax; ++l2) {
              const double target = (k == k2 && l == l2) ? lat_.mu_weight(k) : 0.0;
              worst = std::max(worst, std::abs(inner_product(a, basis(lat_, k2, l2)) - target) /
                                          (lat_.pow(k) * lat_.pow(k2)));
            }
        }
      add("measure.orthogonality", "basis functions are orthogonal with norms q^{2k}", worst, tol);
    });

    const Params grid{{"ntheta", c_.n_theta}};
    guarded(
        "measure.samples.round_trip", "mode to sample conversion inverts exactly", tol,
        [&] {
          const double r = max_over_random([&](std::size_t i) {
            return rel_diff(from_samples(to_samples(rf(i), c_.k_window(), c_.n_theta), c_.lmax), rf(i));
          });
          add("measure.samples.round_trip", "mode to sample conversion inverts exactly", r, tol, Compare::AtMost,
              grid);
        },
        grid);

    guarded(
        "measure.multiply.sample_oracle", "mode product equals pointwise product", tol,
        [&] {
          const double r = max_over_random([&](std::size_t i) {
            const SampledFunction a = to_samples(rf(i), c_.k_window(), c_.n_theta);
            SampledFunction b = to_samples(rf(i + 1), c_.k_window(), c_.n_theta);
            for (int k = c_.kmin; k <= c_.kmax; ++k)
              for (int j = 0; j < c_.n_theta; ++j) b.at(k, j) *= a.at(k, j);
            return rel_diff(multiply(rf(i), rf(i + 1)), from_samples(b, 2 * c_.lmax));
          });
          add("measure.multiply.sample_oracle", "mode product equals pointwise product", r, tol, Compare::AtMost,
              grid);
        },
        grid);

    guarded(
        "measure.conjugate.sample_oracle", "mode conjugation equals pointwise conjugation", tol,
        [&] {
          const double r = max_over_random([&](std::size_t i) {
            SampledFunction s = to_samples(rf(i), c_.k_window(), c_.n_theta);
            for (int k = c_.kmin; k <= c_.kmax; ++k)
              for (int j = 0; j < c_.n_theta; ++j) s.at(k, j) = std::conj(s.at(k, j));
            return rel_diff(conjugate(rf(i)), from_samples(s, c_.lmax));
          });
          add("measure.conjugate.sample_oracle", "mode conjugation equals pointwise conjugation", r, tol,
              Compare::AtMost, grid);
        },
        grid);

    guarded(
        "measure.integrate.quadrature", "mu integral equals weighted circle means", tol,
        [&] {
          const double r = max_over_random([&](std::size_t i) {
            const SampledFunction s = to_samples(rf(i), c_.k_window(), c_.n_theta);
            Complex quad = 0.0;
            for (int k = c_.kmin; k <= c_.kmax; ++k) {
              Complex mean = 0.0;
              for (int j = 0; j < c_.n_theta; ++j) mean += s.at(k, j);
              quad += lat_.mu_weight(k) * mean / static_cast<double>(c_.n_theta);
            }
            return std::abs(quad - integrate_mu(rf(i))) / std::max(1.0, std::abs(quad));
          });
          add("measure.integrate.quadrature", "mu integral equals weighted circle means", r, tol, Compare::AtMost,
              grid);
        },
        grid);

    guarded(
        "measure.haar.pushforward", "mu is the push forward of |gamma|^2 times Haar measure", tol,
        [&] {
          const double r = max_over_random([&](std::size_t i) {
            const SampledFunction s = to_samples(rf(i), c_.k_window(), c_.n_theta);
            std::vector<std::vector<Complex>> rows;
            for (int k = c_.kmin; k <= c_.kmax; ++k) {
              std::vector<Complex> row(s.circle(k).begin(), s.circle(k).end());
              for (auto& v : row) v *= lat_.mu_weight(k);  // |γ|² on circle k
              rows.push_back(std::move(row));
            }
            std::vector<std::span<const Complex>> spans(rows.begin(), rows.end());
            return rel_diff(integrate_haar_gamma(spans), integrate_mu(rf(i)));
          });
          add("measure.haar.pushforward", "mu is the push forward of |gamma|^2 times Haar measure", r, tol,
              Compare::AtMost, grid);
        },
        grid);

    guarded("measure.positivity", "integral of |f|^2 equals the squared norm", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        const Complex lhs = integrate_mu(multiply(conjugate(rf(i)), rf(i)));
        const Complex rhs = inner_product(rf(i), rf(i));
        return rhs.real() < 0.0 ? 1.0 : rel_diff(lhs, rhs);
      });
      add("measure.positivity", "integral of |f|^2 equals the squared norm", r, tol);
    });

    guarded("measure.scaling", "dilating by one circle scales the mu integral by q^-2", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        return rel_diff(integrate_mu(shift(rf(i), 1, 0)), integrate_mu(rf(i)) / (q * q));
      });
      add("measure.scaling", "dilating by one circle scales the mu integral by q^-2", r, tol);
    });

    for (QDiff op : kAllDiffs) {
      const std::string id = "measure.stokes." + lower(to_string(op));
      guarded(id, "mu integral of a q-derivative vanishes", tol, [&] {
        const double r = max_over_random([&](std::size_t i) {
          return weighted_integral_ratio(q_diff(rf(i), op), [&](int k) { return lat_.mu_weight(k); });
        });
        add(id, "mu integral of a q-derivative vanishes", r, tol);
      });
    }

    // Perturbing one circle weight must break Stokes for some test function.
    constexpr double kEps = 0.1;
    const double detect = std::sqrt(tol);
    for (int k0 = -2; k0 <= 2; ++k0) {
      const std::string id = "measure.uniqueness.k0=" + std::to_string(k0);
      const Params p{{"k0", k0}, {"epsilon", kEps}};
      guarded(
          id, "perturbed weights violate Stokes", detect,
          [&] {
            auto weight = [&](int k) { return lat_.mu_weight(k) * (k == k0 ? 1.0 + kEps : 1.0); };
            double best = 0.0;
            for (QDiff op : kAllDiffs) {
              for (int k = k0 - 1; k <= k0 + 1; ++k)
                for (int l = -1; l <= 1; ++l)
                  best = std::max(best, weighted_integral_ratio(q_diff(basis(lat_, k, l), op), weight));
              best = std::max(best, weighted_integral_ratio(q_diff(rf(0), op), weight));
            }
            add(id, "perturbed weights violate Stokes", best, detect, Compare::AtLeast, p);
          },
          p);
    }
  }

  // --------------------------------------------------------------- calculus
  void calculus() {
    const double tol = c_.tol_exact;
    const double q2 = c_.q * c_.q;

    for (QDiff op : kAllDiffs) {
      const std::string name = lower(to_string(op));
      guarded("calculus.generator." + name, "generator action on basis functions", tol, [&] {
        double worst = 0.0;
        for (int k = c_.kmin; k <= c_.kmax; ++k)
          for (int l = -c_.lmax; l <= c_.lmax; ++l)
            worst = std::max(worst, rel_diff(q_diff(basis(lat_, k, l), op), generator_action(lat_, op, k, l)));
        add("calculus.generator." + name, "generator action on basis functions", worst, tol);
      });
      guarded("calculus.two_route." + name, "difference quotient equals mode recurrence", tol, [&] {
        const double r = max_over_random([&](std::size_t i) { return rel_diff(q_diff(rf(i), op), q_diff_pointwise(rf(i), op)); });
        add("calculus.two_route." + name, "difference quotient equals mode recurrence", r, tol);
      });
    }

    guarded("calculus.lr.rz", "right derivative is a continued left derivative", tol, [&] {
      add("calculus.lr.rz", "right derivative is a continued left derivative", max_over_random([&](std::size_t i) {
            return rel_diff(q_diff(rf(i), QDiff::RZ), shift(q_diff(rf(i), QDiff::LZ), -1, -1));
          }),
          tol);
      add("calculus.lr.rzbar", "right derivative is a continued left derivative", max_over_random([&](std::size_t i) {
            return rel_diff(q_diff(rf(i), QDiff::RZBAR), shift(q_diff(rf(i), QDiff::LZBAR), 1, -1));
          }),
          tol);
    });

    guarded("calculus.star.lz", "conjugation exchanges left and right derivatives", tol, [&] {
      add("calculus.star.lz", "conjugation exchanges left and right derivatives", max_over_random([&](std::size_t i) {
            return rel_diff(q_diff(conjugate(rf(i)), QDiff::LZ), conjugate(q_diff(rf(i), QDiff::RZBAR)));
          }),
          tol);
      add("calculus.star.lzbar", "conjugation exchanges left and right derivatives",
          max_over_random([&](std::size_t i) {
            return rel_diff(q_diff(conjugate(rf(i)), QDiff::LZBAR), conjugate(q_diff(rf(i), QDiff::RZ)));
          }),
          tol);
    });

    guarded("calculus.leibniz.rz", "q-derivatives of products", tol, [&] {
      double rz = 0.0, lzbar = 0.0, lz = 0.0, rzbar = 0.0;
      for (std::size_t i = 0; i < random_.size(); ++i) {
        const ModeFunction& f = rf(i);
        const ModeFunction& g = rf(i + 1);
        const ModeFunction fg = multiply(f, g);
        rz = std::max(rz, rel_diff(q_diff(fg, QDiff::RZ), multiply(q_diff(f, QDiff::RZ), shift(g, -1, -1)) +
                                                              multiply(f, q_diff(g, QDiff::RZ))));
        lzbar = std::max(lzbar, rel_diff(q_diff(fg, QDiff::LZBAR), multiply(q_diff(f, QDiff::LZBAR), g) +
                                                                       multiply(shift(f, -1, 1), q_diff(g, QDiff::LZBAR))));
        lz = std::max(lz, rel_diff(q_diff(fg, QDiff::LZ),
                                   multiply(q_diff(f, QDiff::LZ), g) + multiply(shift(f, 1, 1), q_diff(g, QDiff::LZ))));
        rzbar = std::max(rzbar, rel_diff(q_diff(fg, QDiff::RZBAR), multiply(q_diff(f, QDiff::RZBAR), shift(g, 1, -1)) +
                                                                       multiply(f, q_diff(g, QDiff::RZBAR))));
      }
      add("calculus.leibniz.rz", "q-derivatives of products", rz, tol);
      add("calculus.leibniz.lzbar", "q-derivatives of products", lzbar, tol);
      add("calculus.leibniz.lz", "q-derivatives of products", lz, tol);
      add("calculus.leibniz.rzbar", "q-derivatives of products", rzbar, tol);
    });

    struct Pair {
      const char* id;
      const char* anchor;
      QDiff a, b;
      double factor;
    };
    const Pair pairs[] = {
        {"calculus.normal.rz_rzbar", "z and zbar right derivatives commute", QDiff::RZ, QDiff::RZBAR, 1.0},
        {"calculus.normal.lz_lzbar", "z and zbar left derivatives commute", QDiff::LZ, QDiff::LZBAR, 1.0},
        {"calculus.lr_commute.lz_rzbar", "left and right derivatives in different variables commute", QDiff::LZ,
         QDiff::RZBAR, 1.0},
        {"calculus.lr_commute.rz_lzbar", "left and right derivatives in different variables commute", QDiff::RZ,
         QDiff::LZBAR, 1.0},
        // same-variable pairs commute up to the dilation factor of the continuation
        {"calculus.lr_commute.lz_rz", "left and right z-derivatives q-commute", QDiff::LZ, QDiff::RZ, 1.0 / q2},
        {"calculus.lr_commute.lzbar_rzbar", "left and right zbar-derivatives q-commute", QDiff::LZBAR, QDiff::RZBAR,
         q2},
    };
    for (const Pair& p : pairs) {
      guarded(p.id, p.anchor, tol, [&] {
        // a∘b = factor·b∘a
        const double r = max_over_random([&](std::size_t i) {
          const ModeFunction a_b = q_diff(q_diff(rf(i), p.b), p.a);
          const ModeFunction b_a = q_diff(q_diff(rf(i), p.a), p.b);
          return rel_diff(a_b, p.factor * b_a);
        });
        add(p.id, p.anchor, r, tol, Compare::AtMost, {{"factor", p.factor}});
      });
    }

    guarded("calculus.adjoint.rz_rzbar", "adjoint of a q-derivative", tol, [&] {
      auto run = [&](AdjointPair pair, QDiff a, QDiff b) {
        return max_over_random([&](std::size_t i) {
          const ModeFunction& f = rf(i);
          const ModeFunction& g = rf(i + 1);
          const double scale = std::abs(inner_product(f, q_diff(g, a))) + q2 * std::abs(inner_product(q_diff(f, b), g));
          return scale == 0.0 ? 0.0 : std::abs(adjoint_residual(pair, f, g)) / scale;
        });
      };
      add("calculus.adjoint.rz_rzbar", "adjoint of a q-derivative", run(AdjointPair::RZ_RZBAR, QDiff::RZ, QDiff::RZBAR),
          tol);
      add("calculus.adjoint.lzbar_lz", "adjoint of a q-derivative",
          run(AdjointPair::LZBAR_LZ, QDiff::LZBAR, QDiff::LZ), tol);
    });

    guarded("calculus.sigma.group", "rotation automorphisms form a group", tol, [&] {
      GaussianSource rng(c_.seed ^ 0x2002);
      const double r = max_over_random([&](std::size_t i) {
        const double s = 10.0 * rng.uniform() - 5.0;
        const double t = 10.0 * rng.uniform() - 5.0;
        return rel_diff(sigma(sigma(rf(i), s), t), sigma(rf(i), s + t));
      });
      add("calculus.sigma.group", "rotation automorphisms form a group", r, tol);
    });
  }

  // ------------------------------------------------------------------ forms
  void forms() {
    const double tol = c_.tol_exact;

    guarded("forms.d1_d0", "exterior derivative squares to zero", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        const double scale = q_diff(q_diff(rf(i), QDiff::LZ), QDiff::LZBAR).max_abs();
        return scale == 0.0 ? 0.0 : d1(d0(rf(i))).gamma.max_abs() / scale;
      });
      add("forms.d1_d0", "exterior derivative squares to zero", r, tol);
    });

    guarded("forms.leibniz.d0", "exterior derivative obeys the Leibniz rule", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        const ModeFunction& f = rf(i);
        const ModeFunction& g = rf(i + 1);
        return rel_diff(d0(multiply(f, g)), right_mul(d0(f), g) + left_mul(f, d0(g)));
      });
      add("forms.leibniz.d0", "exterior derivative obeys the Leibniz rule", r, tol);
    });

    guarded("forms.leibniz.graded_left", "graded Leibniz rule for one-forms", tol, [&] {
      double left = 0.0, right = 0.0;
      for (std::size_t i = 0; i < random_.size(); ++i) {
        const ModeFunction& f = rf(i);
        const Form1 w(rf(i + 1), rf(i + 2));
        left = std::max(left, rel_diff(d1(left_mul(f, w)).gamma, wedge(d0(f), w).gamma + left_mul(f, d1(w)).gamma));
        right = std::max(right, rel_diff(d1(right_mul(w, f)).gamma, right_mul(d1(w), f).gamma - wedge(w, d0(f)).gamma));
      }
      add("forms.leibniz.graded_left", "graded Leibniz rule for one-forms", left, tol);
      add("forms.leibniz.graded_right", "graded Leibniz rule for one-forms", right, tol);
    });

    guarded("forms.commute.basis_dz", "moving a basis function past dz", tol, [&] {
      double worst = 0.0;
      for (int k = c_.kmin; k <= c_.kmax; ++k)
        for (int l = -c_.lmax; l <= c_.lmax; ++l)
          worst = std::max(worst, rel_diff(commute_through(basis(lat_, k, l), Differential::DZ),
                                           lat_.pow(-l) * basis(lat_, k + 1, l)));
      add("forms.commute.basis_dz", "moving a basis function past dz", worst, tol);
    });

    guarded("forms.commute.round_trip", "bimodule commutation round trip", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        return std::max(rel_diff(commute_back(commute_through(rf(i), Differential::DZ), Differential::DZ), rf(i)),
                        rel_diff(commute_back(commute_through(rf(i), Differential::DZBAR), Differential::DZBAR), rf(i)));
      });
      add("forms.commute.round_trip", "bimodule commutation round trip", r, tol);
    });

    guarded("forms.star", "involution commutes with the exterior derivative", tol, [&] {
      add("forms.star", "involution commutes with the exterior derivative",
          max_over_random([&](std::size_t i) { return rel_diff(star(d0(rf(i))), d0(conjugate(rf(i)))); }), tol);
      add("forms.star.involutive", "involution on one-forms is involutive", max_over_random([&](std::size_t i) {
            const Form1 w(rf(i), rf(i + 1));
            return rel_diff(star(star(w)), w);
          }),
          tol);
    });

    for (int which = 0; which < 4; ++which) {
      const std::string id = "forms.df_expansion." + std::to_string(which);
      guarded(id, "equivalent expansions of df", tol, [&] {
        const double r = max_over_random([&](std::size_t i) { return rel_diff(df_expansion(rf(i), which), d0(rf(i))); });
        add(id, "equivalent expansions of df", r, tol);
      });
    }

    guarded("forms.omega_frame.round_trip", "conversion to the omega frame inverts", tol, [&] {
      const double r = max_over_random([&](std::size_t i) {
        const Form1 w(rf(i), rf(i + 1));
        const auto [a, b] = to_omega_frame(w);
        return rel_diff(from_omega_frame(a, b), w);
      });
      add("forms.omega_frame.round_trip", "conversion to the omega frame inverts", r, tol);
    });
  }

  // --------------------------------------------------------------------- fq
  void fq() {
    const FqEvaluator ev(lat_);
    const double q2 = c_.q * c_.q;
    const int kk = std::max(std::abs(c_.kmin), std::abs(c_.kmax));

    guarded("fq.unimodular", "quantum exponential is unimodular", 1e-10, [&] {
      GaussianSource rng(c_.seed ^ 0x3003);
      double worst = 0.0;
      int count = 0;
      for (int k = -2 * kk; k <= 0; k += 2, ++count)  // singular circles, at the singular angle
        worst = std::max(worst, std::abs(std::abs(ev.point(CirclePoint(k, std::numbers::pi))) - 1.0));
      for (; count < 1000; ++count) {
        const int k = -2 * kk + static_cast<int>(rng.uniform() * (4 * kk + 1));
        worst = std::max(worst, std::abs(std::abs(ev.point(CirclePoint(k, kTwoPi * rng.uniform()))) - 1.0));
      }
      add("fq.unimodular", "quantum exponential is unimodular", worst, 1e-10, Compare::AtMost,
          {{"points", count}});
    });

    guarded("fq.real_axis", "quantum exponential is 1 on the positive axis", 1e-14, [&] {
      double worst = 0.0;
      for (int k = -2 * kk; k <= 2 * kk; ++k) worst = std::max(worst, std::abs(ev.point(CirclePoint(k, 0.0)) - 1.0));
      add("fq.real_axis", "quantum exponential is 1 on the positive axis", worst, 1e-14);
    });

    guarded("fq.minus_one", "along-circle value at z = -1", 1e-10, [&] {
      add("fq.minus_one", "along-circle value at z = -1", std::abs(ev.point(CirclePoint(0, std::numbers::pi)) + 1.0),
          1e-10);
    });

    const int l_half = kernel_l_half_width(c_, c_.n_theta);
    const Params pp{{"ntheta", c_.n_theta}, {"lmax", l_half}};
    guarded(
        "fq.parseval", "circle coefficients of a unimodular function", 1e-10,
        [&] {
          double worst = 0.0;
          for (int n = -2 * kk; n <= 2 * kk; ++n)
            worst = std::max(worst, ev.circle_coeffs(n, {-l_half, l_half}, c_.n_theta).parseval_defect);
          add("fq.parseval", "circle coefficients of a unimodular function", worst, 1e-10, Compare::AtMost, pp);
        },
        pp);

    guarded(
        "fq.small_circle.l0", "quantum exponential tends to 1 at the origin", 1e-8,
        [&] {
          constexpr int n = 20;
          const CircleCoefficients a = ev.circle_coeffs(n, {-l_half, l_half}, c_.n_theta);
          add("fq.small_circle.l0", "quantum exponential tends to 1 at the origin", std::abs(a.at(0) - 1.0), 1e-8,
              Compare::AtMost, {{"n", n}});
          // first-order term: F_q(z) ≈ 1 + (z̄ − z)/(1 − q²)
          const double bound = 2.0 * lat_.pow(n) / (1.0 - q2);
          double worst = 0.0;
          for (int l = -l_half; l <= l_half; ++l)
            if (l != 0) worst = std::max(worst, std::abs(a.at(l)));
          add("fq.small_circle.l_nonzero", "quantum exponential tends to 1 at the origin", worst / bound, 1.0,
              Compare::AtMost, {{"n", n}, {"bound", bound}});
        },
        pp);

    guarded("fq.extended.functional_equation", "telescoping of the two-argument product", 1e-10, [&] {
      GaussianSource rng(c_.seed ^ 0x4004);
      double fe = 0.0, diag = 0.0;
      for (int i = 0; i < 200; ++i) {
        const Complex u = std::polar(std::pow(c_.q, 12.0 * rng.uniform() - 6.0), kTwoPi * rng.uniform());
        const Complex v = std::polar(std::pow(c_.q, 12.0 * rng.uniform() - 6.0), kTwoPi * rng.uniform());
        const Complex rhs = ev.extended(u, v) * (1.0 + u) / (1.0 + v);
        fe = std::max(fe, std::abs(ev.extended(q2 * u, q2 * v) - rhs) / std::abs(rhs));
        const CirclePoint z(static_cast<int>(rng.uniform() * 13) - 6, kTwoPi * rng.uniform());
        const Complex zv = z.value(lat_);
        diag = std::max(diag, std::abs(ev.extended(zv, std::conj(zv)) - ev.point(z)));
      }
      add("fq.extended.functional_equation", "telescoping of the two-argument product", fe, 1e-10);
      add("fq.extended.diagonal", "two-argument product on the diagonal", diag, 1e-10);
    });

    guarded("fq.diff_identity", "q-derivatives of the quantum exponential", 1e-9, [&] {
      GaussianSource rng(c_.seed ^ 0x5005);
      double worst = 0.0;
      int evaluated = 0, skipped = 0;
      for (int i = 0; i < 200; ++i) {
        const CirclePoint zeta(static_cast<int>(rng.uniform() * 7) - 3, kTwoPi * rng.uniform());
        const CirclePoint z(static_cast<int>(rng.uniform() * 7) - 3, kTwoPi * rng.uniform());
        const DiffIdentityReport r = ev.diff_identity_residual(zeta, std::span<const CirclePoint>(&z, 1));
        worst = std::max(worst, r.residual);
        evaluated += r.evaluated;
        skipped += r.skipped_singular;
      }
      add("fq.diff_identity", "q-derivatives of the quantum exponential", worst, 1e-9, Compare::AtMost,
          {{"evaluated", evaluated}, {"skipped_singular", skipped}});

      std::vector<CirclePoint> zs;
      for (int k = -3; k <= 3; ++k) zs.emplace_back(k, 0.0);
      double real_worst = 0.0;
      for (int k = -3; k <= 3; ++k)
        real_worst = std::max(real_worst, ev.diff_identity_residual(CirclePoint(k, 0.0), zs).residual);
      add("fq.diff_identity.real_axis", "q-derivatives of the quantum exponential", real_worst, 1e-10);
    });
  }

  // ---------------------------------------------------------------- fourier
  void fourier() {
    const double tol = c_.tol_quad;
    const int w_max = c_.kernel_half_width();
    const FourierWindowSpec spec{w_max, kernel_l_half_width(c_, c_.n_theta), c_.n_theta};
    const Params p{{"kernel_kmax", spec.half_width}, {"kernel_lmax", spec.l_half_width}, {"ntheta", spec.n_theta}};

    std::optional<FourierData> data;
    guarded(
        "fourier.kernel.parseval", "kernel circles keep unit energy", 1e-8,
        [&] {
          if (spec.l_half_width < kFourierLReach)
            throw WindowError("kernel angular window ±" + std::to_string(spec.l_half_width) +
                              " cannot hold the test modes (needs ±" + std::to_string(kFourierLReach) + ")");
          data.emplace(build_for(lat_, spec));
          add("fourier.kernel.parseval", "kernel circles keep unit energy", data->max_parseval_defect(), 1e-8,
              Compare::AtMost, p);
        },
        p);

    guarded("fourier.kernel.ntheta_doubling", "kernel coefficients are spectrally converged", 1e-10, [&] {
      const IndexWindow nw{-4, 4};
      const IndexWindow lw{-spec.l_half_width, spec.l_half_width};
      const FourierData a = build_fourier_data(lat_, nw, lw, spec.n_theta);
      const FourierData b = build_fourier_data(lat_, nw, lw, 2 * spec.n_theta);
      double worst = 0.0;
      for (int n = nw.lo; n <= nw.hi; ++n)
        for (int l = lw.lo; l <= lw.hi; ++l) worst = std::max(worst, std::abs(a.a(n, l) - b.a(n, l)));
      add("fourier.kernel.ntheta_doubling", "kernel coefficients are spectrally converged", worst, 1e-10,
          Compare::AtMost, {{"ntheta", spec.n_theta}});
    });

    // Every remaining check needs the kernel at the full window.
    auto with_data = [&](const std::string& id, const std::string& anchor, double threshold,
                         const std::function<void(const FourierData&)>& body) {
      guarded(
          id, anchor, threshold,
          [&] {
            if (!data) throw WindowError("kernel table unavailable");
            body(*data);
          },
          p);
    };

    with_data("fourier.two_route", "mode-space transform equals direct quadrature", 1e-8, [&](const FourierData& d) {
      GaussianSource rng(c_.seed ^ 0x6006);
      const ModeFunction f = random_mode_function(lat_, {-1, 1}, {-2, 2}, rng);
      const TransformResult t = fourier_apply(f, d);
      const IndexWindow out = t.out_window;
      std::vector<CirclePoint> pts;
      for (int i = 0; i < 20; ++i) {
        const int m = std::clamp(static_cast<int>(rng.uniform() * 7) - 3, out.lo, out.hi);
        pts.emplace_back(m, kTwoPi * rng.uniform());
      }
      const FqEvaluator ev(lat_);
      const auto direct = fourier_direct_quadrature(f, pts, d.n_theta(), f.k_support(), ev);
      const auto modes = evaluate_at(t.value, pts);
      double diff = 0.0, scale = 0.0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        diff = std::max(diff, std::abs(direct[i] - modes[i]));
        scale = std::max(scale, std::abs(direct[i]));
      }
      add("fourier.two_route", "mode-space transform equals direct quadrature", diff / scale, 1e-8, Compare::AtMost,
          p);

      // far inside the origin F_q(ζz) ≈ 1, so ℱf(ζ) → ∫ f dμ
      const CirclePoint origin(60, 0.7);
      const Complex at0 = fourier_direct_quadrature(f, std::span<const CirclePoint>(&origin, 1), d.n_theta(),
                                                    f.k_support(), ev)[0];
      add("fourier.origin", "transform at the origin is the mu integral", rel_diff(at0, integrate_mu(f)), 1e-8,
          Compare::AtMost, p);
    });

    with_data("fourier.mode_sign", "transform reverses the angular mode", 0.0, [&](const FourierData& d) {
      double bad = 0.0;
      for (int k = kFourierK.lo; k <= kFourierK.hi; ++k)
        for (int l = kFourierL.lo; l <= kFourierL.hi; ++l) {
          const ModeFunction g = basis(lat_, k, l);
          const ModeFunction fg = fourier_apply(g, d).value;
          const ModeFunction ag = fourier_adjoint_apply(g, d).value;
          for (const ModeFunction* h : {&fg, &ag})
            for (const auto& [mode, c] : h->coeffs())
              if (mode.l != -l) bad = std::max(bad, std::abs(c));
        }
      add("fourier.mode_sign", "transform reverses the angular mode", bad, 0.0, Compare::AtMost, p);
    });

    with_data("fourier.adjointness", "adjoint transform has the conjugate kernel", c_.tol_exact,
              [&](const FourierData& d) {
                GaussianSource rng(c_.seed ^ 0x7007);
                double worst = 0.0;
                for (int i = 0; i < 10; ++i) {
                  const ModeFunction f = random_mode_function(lat_, kFourierK, kFourierL, rng);
                  const ModeFunction h = random_mode_function(lat_, kFourierK, kFourierL, rng);
                  const Complex lhs = inner_product(h, fourier_apply(f, d, kFourierK).value);
                  const Complex rhs = inner_product(fourier_adjoint_apply(h, d, kFourierK).value, f);
                  worst = std::max(worst, rel_diff(lhs, rhs));
                }
                add("fourier.adjointness", "adjoint transform has the conjugate kernel", worst, c_.tol_exact,
                    Compare::AtMost, p);
              });

    // Convergence sweep over the kernel radial window.
    const std::vector<int> sweep{(w_max + 1) / 2, (3 * w_max + 3) / 4, w_max};
    std::vector<FourierFamilies> fams;
    std::string sweep_error;
    try {
      if (!data) throw WindowError("kernel table unavailable");
      for (int w : sweep) {
        if (w == w_max)
          fams.push_back(fourier_families(lat_, *data));
        else
          fams.push_back(fourier_families(lat_, build_for(lat_, {w, spec.l_half_width, spec.n_theta})));
      }
    } catch (const Error& e) {
      sweep_error = e.what();
      fams.clear();
    }
    Params sp = p;
    for (std::size_t i = 0; i < sweep.size(); ++i) sp.emplace_back("sweep_kernel_kmax_" + std::to_string(i), sweep[i]);

    auto family = [&](const std::string& id, const std::string& anchor, double threshold,
                      const std::function<double(const FourierFamilies&)>& get,
                      const std::function<double(const FourierFamilies&)>& tail = {}) {
      if (fams.empty()) {
        for (const std::string& suffix : {std::string(), std::string(".convergence")}) {
          CheckRecord& r = add(id + suffix, anchor, std::nan(""), suffix.empty() ? threshold : 0.5, Compare::AtMost, sp);
          r.pass = false;
          r.error = sweep_error;
        }
        return;
      }
      CheckRecord& last = add(id, anchor, get(fams.back()), threshold, Compare::AtMost, p);
      if (tail) last.tail = tail(fams.back());
      std::vector<double> series;
      for (const auto& f : fams) series.push_back(get(f));
      // strictly decreasing, and at least a factor 2 overall
      const double ratio = series.front() > 0.0 ? series.back() / series.front() : 0.0;
      CheckRecord& conv = add(id + ".convergence", anchor + " (monotone in the kernel window)", ratio, 0.5,
                              Compare::AtMost, sp);
      conv.series = series;
      conv.pass = conv.pass && strictly_decreasing(series);
    };

    for (std::size_t i = 0; i < std::size(kAllRelations); ++i) {
      const Relation r = kAllRelations[i];
      const std::string id = "fourier.relation." + lower(to_string(r));
      family(
          id, "commutation of the transform with the calculus", tol,
          [i](const FourierFamilies& f) { return f.relations[i].total(); },
          [i](const FourierFamilies& f) { return f.relations[i].tail; });
      if (!fams.empty())
        add(id + ".interior", "commutation of the transform with the calculus (visible circles)",
            fams.back().relations[i].interior, 1e-6, Compare::AtMost, p);
    }
    family("fourier.plancherel", "transform adjoint times transform on basis functions", tol,
           [](const FourierFamilies& f) { return f.plancherel; });
    family("fourier.plancherel.cross", "transform images of distinct circles are orthogonal", tol,
           [](const FourierFamilies& f) { return f.plancherel_cross; });
    family("fourier.unitarity", "rescaled transform is an isometry", tol,
           [](const FourierFamilies& f) { return f.unitarity; });

    with_data("fourier.plancherel.eigenvalue_00", "transform adjoint times transform on basis functions", tol,
              [&](const FourierData& d) {
                const PlancherelResidual pr = plancherel_residual(0, 0, d);
                add("fourier.plancherel.eigenvalue_00", "transform adjoint times transform on basis functions",
                    std::abs(pr.eigenvalue_ratio - 1.0), tol, Compare::AtMost, p);
              });
    with_data("fourier.unitarity.diagonal", "rescaled transform is an isometry", tol, [&](const FourierData& d) {
      add("fourier.unitarity.diagonal", "rescaled transform is an isometry", unitarity_defect({-2, 2}, {0, 0}, d), tol,
          Compare::AtMost, p);
    });
  }

  const VerifyConfig& c_;
  QLattice lat_;
  GaussianSource rng_;
  std::vector<ModeFunction> random_;
  std::vector<CheckRecord> records_;
};

nlohmann::ordered_json config_json(const VerifyConfig& c) {
  nlohmann::ordered_json j;
  j["q"] = c.q;
  j["kmin"] = c.kmin;
  j["kmax"] = c.kmax;
  j["lmax"] = c.lmax;
  j["ntheta"] = c.n_theta;
  j["tol_exact"] = c.tol_exact;
  j["tol_quad"] = c.tol_quad;
  j["suites"] = nlohmann::ordered_json::array();
  for (Suite s : c.suites) j["suites"].push_back(std::string(to_string(s)));
  j["seed"] = c.seed;
  j["random_functions"] = c.n_random;
  j["kernel_kmax"] = c.kernel_half_width();
  return j;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* compare_str(Compare c) { return c == Compare::AtMost ? "<=" : ">="; }

}  // namespace

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Measure: return "measure";
    case Suite::Calculus: return "calculus";
    case Suite::Forms: return "forms";
    case Suite::Fq: return "fq";
    case Suite::Fourier: return "fourier";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : kAllSuites)
    if (to_string(s) == name) return s;
  throw ConfigError("unknown suite '" + std::string(name) + "' (expected measure, calculus, forms, fq, fourier)");
}

void VerifyConfig::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("q must satisfy 0 < q < 1, got " + format_number(q));
  if (kmin > kmax) throw ConfigError("empty radial window: kmin > kmax");
  if (lmax < 0) throw ConfigError("lmax must be non-negative");
  if (n_theta <= 0 || n_theta % 2 != 0) throw ConfigError("ntheta must be a positive even number");
  if (!(tol_exact > 0.0) || !(tol_quad > 0.0)) throw ConfigError("tolerances must be positive");
  if (tol_exact > tol_quad) throw ConfigError("tol-exact must not exceed tol-quad");
  if (suites.empty()) throw ConfigError("no suites selected");
  if (n_random < 3) throw ConfigError("at least 3 random functions are needed");
  if (kernel_kmax && *kernel_kmax < 0) throw ConfigError("kernel window half-width must be non-negative");
}

int VerifyConfig::kernel_half_width() const {
  return kernel_kmax ? *kernel_kmax : 2 * std::max(std::abs(kmin), std::abs(kmax));
}

int Report::passed() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; }));
}

int Report::failed() const { return static_cast<int>(records.size()) - passed(); }

Report run_verify(const VerifyConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = config;
  Runner runner(config);
  std::vector<Suite> suites = config.suites;
  std::sort(suites.begin(), suites.end());
  suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
  for (Suite s : suites) runner.run(s);
  report.records = runner.take();
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "text") return ReportFormat::Text;
  throw ConfigError("unknown format '" + std::string(name) + "' (expected json, csv, text)");
}

std::string format_report(const Report& report, ReportFormat format, bool include_wall_time) {
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["tool"] = "qplane";
    j["version"] = kVersion;
    j["config"] = config_json(report.config);
    j["summary"] = {{"checks", report.records.size()}, {"passed", report.passed()}, {"failed", report.failed()}};
    j["records"] = nlohmann::ordered_json::array();
    for (const CheckRecord& r : report.records) {
      nlohmann::ordered_json rec;
      rec["id"] = r.id;
      rec["anchor"] = r.anchor;
      rec["residual"] = r.residual;
      rec["threshold"] = r.threshold;
      rec["compare"] = compare_str(r.compare);
      rec["pass"] = r.pass;
      rec["tail"] = r.tail ? nlohmann::ordered_json(*r.tail) : nlohmann::ordered_json(nullptr);
      rec["config"] = nlohmann::ordered_json::object();
      for (const auto& [k, v] : r.params) rec["config"][k] = v;
      if (!r.series.empty()) rec["series"] = r.series;
      if (!r.error.empty()) rec["error"] = r.error;
      j["records"].push_back(std::move(rec));
    }
    if (include_wall_time) j["wall_time"] = report.wall_time;
    return detail::dump_json(j);
  }
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "id,pass,residual,compare,threshold,tail,anchor,error\n";
    for (const CheckRecord& r : report.records)
      out << r.id << ',' << (r.pass ? "true" : "false") << ',' << format_number(r.residual) << ','
          << compare_str(r.compare) << ',' << format_number(r.threshold) << ','
          << (r.tail ? format_number(*r.tail) : "") << ',' << csv_quote(r.anchor) << ',' << csv_quote(r.error)
          << '\n';
    return out.str();
  }
  for (const CheckRecord& r : report.records) {
    char line[256];
    std::snprintf(line, sizeof line, "%s  %-44s %12.4e %s %-10.3e", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                  r.residual, compare_str(r.compare), r.threshold);
    out << line;
    if (!r.error.empty()) out << "  error: " << r.error;
    out << '\n';
  }
  out << report.passed() << " passed, " << report.failed() << " failed";
  if (include_wall_time) out << " in " << format_number(report.wall_time) << " s";
  out << '\n';
  return out.str();
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "ntheta") return SweepAxis::NTheta;
  if (name == "kwindow") return SweepAxis::KWindow;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected ntheta, kwindow)");
}

ConvergenceSweep run_convergence(const VerifyConfig& config, SweepAxis axis, const std::vector<int>& values) {
  config.validate();
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  const QLattice lat(config.q);
  ConvergenceSweep sweep;
  sweep.axis = axis;
  sweep.values = values;
  for (Relation r : kAllRelations) sweep.families.push_back("relation_" + lower(to_string(r)));
  for (const char* name : {"plancherel", "plancherel_cross", "unitarity", "kernel_parseval"}) sweep.families.push_back(name);

  sweep.rows.resize(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    FourierWindowSpec spec{config.kernel_half_width(), 0, config.n_theta};
    if (axis == SweepAxis::KWindow) {
      if (values[i] < 0) throw ConfigError("kernel window half-width must be non-negative");
      spec.half_width = values[i];
    } else {
      if (values[i] <= 0) throw ConfigError("ntheta must be positive");
      spec.n_theta = values[i];
    }
    spec.l_half_width = kernel_l_half_width(config, spec.n_theta);
    if (spec.l_half_width < kFourierLReach)
      throw WindowError("ntheta = " + std::to_string(spec.n_theta) + " leaves a kernel angular window of ±" +
                        std::to_string(spec.l_half_width) + "; the test modes need ±" + std::to_string(kFourierLReach));
    const FourierFamilies fam = fourier_families(lat, build_for(lat, spec));
    auto& row = sweep.rows[i];
    for (const auto& r : fam.relations) row.push_back(r.total());
    row.push_back(fam.plancherel);
    row.push_back(fam.plancherel_cross);
    row.push_back(fam.unitarity);
    row.push_back(fam.parseval);
  }
  if (values.size() > 1) {
    for (std::size_t f = 0; f < sweep.families.size(); ++f) {
      std::vector<double> s;
      for (const auto& row : sweep.rows) s.push_back(row[f]);
      sweep.monotone.push_back(strictly_decreasing(s));
    }
  }
  return sweep;
}

std::string format_sweep(const ConvergenceSweep& sweep, ReportFormat format) {
  const std::string axis = sweep.axis == SweepAxis::KWindow ? "kernel_kmax" : "ntheta";
  if (format == ReportFormat::Json) {
    nlohmann::ordered_json j;
    j["axis"] = axis;
    j["values"] = sweep.values;
    j["families"] = nlohmann::ordered_json::object();
    for (std::size_t f = 0; f < sweep.families.size(); ++f) {
      nlohmann::ordered_json fam;
      fam["residuals"] = nlohmann::ordered_json::array();
      for (const auto& row : sweep.rows) fam["residuals"].push_back(row[f]);
      fam["monotone_decreasing"] =
          sweep.monotone.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(bool(sweep.monotone[f]));
      j["families"][sweep.families[f]] = std::move(fam);
    }
    return detail::dump_json(j);
  }
  std::ostringstream out;
  const char sep = format == ReportFormat::Csv ? ',' : ' ';
  out << axis;
  for (const auto& name : sweep.families) out << sep << name;
  out << '\n';
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    out << sweep.values[i];
    for (double v : sweep.rows[i]) out << sep << format_number(v);
    out << '\n';
  }
  if (!sweep.monotone.empty()) {
    out << "monotone";
    for (bool m : sweep.monotone) out << sep << (m ? "true" : "false");
    out << '\n';
  }
  return out.str();
}

}  // namespace qplane
