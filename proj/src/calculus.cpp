#include "qplane/calculus.hpp"

#include <cmath>

namespace qplane {

std::string_view to_string(QDiff op) {
  switch (op) {
    case QDiff::RZ: return "RZ";
    case QDiff::LZ: return "LZ";
    case QDiff::RZBAR: return "RZBAR";
    case QDiff::LZBAR: return "LZBAR";
  }
  return "?";
}

ModeFunction shift(const ModeFunction& f, int m, int s) {
  const QLattice& lat = f.lattice();
  ModeFunction out(lat);
  for (const auto& [mode, c] : f.coeffs()) out.set(mode.k - m, mode.l, lat.pow(mode.l * s) * c);
  return out;
}

ModeFunction sigma(const ModeFunction& f, double t) {
  ModeFunction out(f.lattice());
  const double angle = -t * f.lattice().log_q();
  for (const auto& [mode, c] : f.coeffs()) out.set(mode.k, mode.l, std::polar(1.0, mode.l * angle) * c);
  return out;
}

ModeFunction mult_coord(const ModeFunction& f, Coord which) {
  const QLattice& lat = f.lattice();
  const int dl = which == Coord::Z ? 1 : -1;
  ModeFunction out(lat);
  for (const auto& [mode, c] : f.coeffs()) out.set(mode.k, mode.l + dl, lat.pow(mode.k) * c);
  return out;
}

ModeFunction div_coord(const ModeFunction& f, Coord which) {
  const QLattice& lat = f.lattice();
  const int dl = which == Coord::Z ? -1 : 1;
  ModeFunction out(lat);
  for (const auto& [mode, c] : f.coeffs()) out.set(mode.k, mode.l + dl, lat.pow(-mode.k) * c);
  return out;
}

ModeFunction q_diff(const ModeFunction& f, QDiff which) {
  const QLattice& lat = f.lattice();
  const double q2 = lat.q() * lat.q();
  const double c_right = 1.0 / (1.0 / q2 - 1.0);  // 1/(q^{-2} - 1)
  const double c_left = 1.0 / (1.0 - q2);         // 1/(1 - q^2)
  ModeFunction out(lat);
  for (const auto& [mode, c] : f.coeffs()) {
    const int k = mode.k;
    const int l = mode.l;
    switch (which) {
      case QDiff::RZ:
        out.add(k + 1, l - 1, c_right * lat.pow(-l - (k + 1)) * c);
        out.add(k, l - 1, -c_right * lat.pow(-k) * c);
        break;
      case QDiff::LZ:
        out.add(k, l - 1, c_left * lat.pow(-k) * c);
        out.add(k - 1, l - 1, -c_left * lat.pow(l - (k - 1)) * c);
        break;
      case QDiff::RZBAR:
        out.add(k, l + 1, c_left * lat.pow(-k) * c);
        out.add(k - 1, l + 1, -c_left * lat.pow(-l - (k - 1)) * c);
        break;
      case QDiff::LZBAR:
        out.add(k + 1, l + 1, c_right * lat.pow(l - (k + 1)) * c);
        out.add(k, l + 1, -c_right * lat.pow(-k) * c);
        break;
    }
  }
  return out;
}

ModeFunction q_diff_pointwise(const ModeFunction& f, QDiff which) {
  const double q2 = f.q() * f.q();
  switch (which) {
    case QDiff::RZ:  // [f(q^{-1}·q^{-1}z) − f(z)] / ((q^{-2}−1) z)
      return (1.0 / (1.0 / q2 - 1.0)) * div_coord(shift(f, -1, -1) - f, Coord::Z);
    case QDiff::LZ:  // [f(z) − f(q·qz)] / ((1−q²) z)
      return (1.0 / (1.0 - q2)) * div_coord(f - shift(f, 1, 1), Coord::Z);
    case QDiff::LZBAR:  // [f(q·q^{-1}z) − f(z)] / ((q^{-2}−1) z̄)
      return (1.0 / (1.0 / q2 - 1.0)) * div_coord(shift(f, -1, 1) - f, Coord::ZBAR);
    case QDiff::RZBAR:  // [f(z) − f(q^{-1}·qz)] / ((1−q²) z̄)
      return (1.0 / (1.0 - q2)) * div_coord(f - shift(f, 1, -1), Coord::ZBAR);
  }
  return ModeFunction(f.lattice());
}

OperatorId OperatorId::diff(QDiff op) {
  switch (op) {
    case QDiff::RZ: return OperatorId(Tag::RZ);
    case QDiff::LZ: return OperatorId(Tag::LZ);
    case QDiff::RZBAR: return OperatorId(Tag::RZBAR);
    case QDiff::LZBAR: return OperatorId(Tag::LZBAR);
  }
  return OperatorId(Tag::RZ);
}

ModeFunction OperatorId::operator()(const ModeFunction& f) const {
  switch (tag_) {
    case Tag::RZ: return q_diff(f, QDiff::RZ);
    case Tag::LZ: return q_diff(f, QDiff::LZ);
    case Tag::RZBAR: return q_diff(f, QDiff::RZBAR);
    case Tag::LZBAR: return q_diff(f, QDiff::LZBAR);
    case Tag::Z: return mult_coord(f, Coord::Z);
    case Tag::ZBAR: return mult_coord(f, Coord::ZBAR);
    case Tag::SIGMA: return qplane::sigma(f, t_);
    case Tag::SHIFT: return qplane::shift(f, m_, s_);
  }
  return f;
}

Complex adjoint_residual(AdjointPair pair, const ModeFunction& f, const ModeFunction& g) {
  const double q2 = f.q() * f.q();
  switch (pair) {
    case AdjointPair::RZ_RZBAR:
      return inner_product(f, q_diff(g, QDiff::RZ)) + q2 * inner_product(q_diff(f, QDiff::RZBAR), g);
    case AdjointPair::LZBAR_LZ:
      return inner_product(f, q_diff(g, QDiff::LZBAR)) + q2 * inner_product(q_diff(f, QDiff::LZ), g);
  }
  return 0.0;
}

}  // namespace qplane
