#include "qplane/forms.hpp"

#include <algorithm>
#include <stdexcept>

#include "qplane/error.hpp"

namespace qplane {

Form1::Form1(ModeFunction a, ModeFunction b) : alpha(std::move(a)), beta(std::move(b)) {
  if (!(alpha.lattice() == beta.lattice())) throw ConfigError("Form1 components live on different lattices");
}

Form1& Form1::operator+=(const Form1& o) {
  alpha += o.alpha;
  beta += o.beta;
  return *this;
}

Form1& Form1::operator-=(const Form1& o) {
  alpha -= o.alpha;
  beta -= o.beta;
  return *this;
}

ModeFunction commute_through(const ModeFunction& c, Differential past) {
  return past == Differential::DZ ? shift(c, -1, -1) : shift(c, 1, -1);
}

ModeFunction commute_back(const ModeFunction& c, Differential past) {
  return past == Differential::DZ ? shift(c, 1, 1) : shift(c, -1, 1);
}

Form1 d0(const ModeFunction& f) { return Form1(q_diff(f, QDiff::LZ), q_diff(f, QDiff::LZBAR)); }

Form2 d1(const Form1& w) { return Form2{q_diff(w.beta, QDiff::LZ) - q_diff(w.alpha, QDiff::LZBAR)}; }

Form1 left_mul(const ModeFunction& f, const Form1& w) {
  return Form1(multiply(f, w.alpha), multiply(f, w.beta));
}

Form1 right_mul(const Form1& w, const ModeFunction& f) {
  return Form1(multiply(w.alpha, commute_back(f, Differential::DZ)),
               multiply(w.beta, commute_back(f, Differential::DZBAR)));
}

Form2 left_mul(const ModeFunction& f, const Form2& w) { return Form2{multiply(f, w.gamma)}; }

Form2 right_mul(const Form2& w, const ModeFunction& f) {
  // dz∧dz̄·f = dz·(f past dz̄)·dz̄ = (f past dz̄, then past dz)·dz∧dz̄
  return Form2{multiply(w.gamma, commute_back(commute_back(f, Differential::DZBAR), Differential::DZ))};
}

Form2 wedge(const Form1& a, const Form1& b) {
  // α dz ∧ δ dz̄ = α (δ past dz) dz∧dz̄;  β dz̄ ∧ γ dz = −β (γ past dz̄) dz∧dz̄
  return Form2{multiply(a.alpha, commute_back(b.beta, Differential::DZ)) -
               multiply(a.beta, commute_back(b.alpha, Differential::DZBAR))};
}

Form1 star(const Form1& w) {
  return Form1(commute_back(conjugate(w.beta), Differential::DZ),
               commute_back(conjugate(w.alpha), Differential::DZBAR));
}

std::pair<ModeFunction, ModeFunction> to_omega_frame(const Form1& w) {
  const double q2 = w.alpha.q() * w.alpha.q();
  // ω̄ z̄ = q^{-2} z̄ ω̄
  return {(q2 - 1.0) * mult_coord(w.alpha, Coord::Z), (1.0 - 1.0 / q2) * mult_coord(w.beta, Coord::ZBAR)};
}

Form1 from_omega_frame(const ModeFunction& c_omega, const ModeFunction& c_omega_bar) {
  const double q2 = c_omega.q() * c_omega.q();
  return Form1((1.0 / (q2 - 1.0)) * div_coord(c_omega, Coord::Z),
               (1.0 / (1.0 - 1.0 / q2)) * div_coord(c_omega_bar, Coord::ZBAR));
}

Form1 df_expansion(const ModeFunction& f, int which) {
  switch (which) {
    case 0:
      return Form1(q_diff(f, QDiff::LZ), commute_back(q_diff(f, QDiff::RZBAR), Differential::DZBAR));
    case 1:
      return Form1(commute_back(q_diff(f, QDiff::RZ), Differential::DZ),
                   commute_back(q_diff(f, QDiff::RZBAR), Differential::DZBAR));
    case 2:
      return Form1(commute_back(q_diff(f, QDiff::RZ), Differential::DZ), q_diff(f, QDiff::LZBAR));
    case 3:
      return Form1(q_diff(f, QDiff::LZ), q_diff(f, QDiff::LZBAR));
    default:
      throw std::out_of_range("df_expansion index must be 0..3");
  }
}

double max_abs_diff(const Form1& a, const Form1& b) {
  return std::max(max_abs_diff(a.alpha, b.alpha), max_abs_diff(a.beta, b.beta));
}

double max_abs(const Form1& w) { return std::max(w.alpha.max_abs(), w.beta.max_abs()); }

}  // namespace qplane
