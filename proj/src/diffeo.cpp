#include "pushpull/diffeo.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace pushpull {

namespace {

std::string point_string(const Vector& x) {
  std::ostringstream out;
  out << "(";
  for (int i = 0; i < x.size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

}  // namespace

Diffeomorphism Diffeomorphism::inverted() const {
  Diffeomorphism inv;
  inv.source = target;
  inv.target = source;
  inv.forward = inverse;
  inv.inverse = forward;
  inv.fd_step = fd_step;
  if (jacobian) {
    auto fwd_jacobian = jacobian;
    auto fwd_inverse = inverse;
    auto src = source;
    inv.jacobian = [fwd_jacobian, fwd_inverse, src](const Vector& y) -> Matrix {
      const Vector x = src.wrap(fwd_inverse(y));
      return fwd_jacobian(x).inverse();
    };
  }
  return inv;
}

Matrix jacobian_matrix(const Diffeomorphism& phi, const Vector& x) {
  const int n = phi.source.dim();
  Matrix jac(n, n);
  if (phi.jacobian) {
    jac = phi.jacobian(x);
    if (jac.rows() != n || jac.cols() != n) {
      throw ShapeError("analytic Jacobian has wrong shape");
    }
  } else {
    const double h = phi.fd_step;
    for (int axis = 0; axis < n; ++axis) {
      Vector xp = x, xm = x;
      xp[axis] += h;
      xm[axis] -= h;
      // The closures are lifts, so no wrapping between the two evaluations.
      jac.col(axis) = (phi.forward(xp) - phi.forward(xm)) / (2.0 * h);
    }
  }
  if (!jac.allFinite()) throw NumericError("Jacobian is non-finite at " + point_string(x));
  if (jac.determinant() <= 0.0) {
    throw OrientationError("map does not preserve orientation at " + point_string(x));
  }
  return jac;
}

Matrix frame_matrix(const Diffeomorphism& phi, const Vector& x) {
  const Matrix frame_src = orthonormal_frame(phi.source, x);
  const Matrix frame_tgt = orthonormal_frame(phi.target, phi.map_forward(x));
  const Matrix jac = jacobian_matrix(phi, x);
  return frame_tgt.partialPivLu().solve(jac * frame_src);
}

double SingularSpectrum::product(int first, int last) const {
  double result = 1.0;
  for (int i = first; i <= last; ++i) result *= alphas[i - 1];
  return result;
}

SingularSpectrum singular_spectrum(const Diffeomorphism& phi, const Vector& x) {
  SingularSpectrum spectrum;
  spectrum.point = x;
  spectrum.alphas = singular_values(frame_matrix(phi, x));
  const int n = static_cast<int>(spectrum.alphas.size());
  if (spectrum.alphas[n - 1] <= 1e-12) {
    throw DegenerateMapError("singular value " + std::to_string(spectrum.alphas[n - 1]) +
                             " below cutoff at " + point_string(x));
  }
  return spectrum;
}

double jacobian_determinant(const Diffeomorphism& phi, const Vector& x) {
  const double det = frame_matrix(phi, x).determinant();
  if (det <= 0.0) {
    throw OrientationError("frame Jacobian determinant nonpositive at " + point_string(x));
  }
  return det;
}

SingularSpectrum inverse_spectrum(const Diffeomorphism& phi, const Vector& y) {
  return singular_spectrum(phi.inverted(), y);
}

namespace {

// Stretch of a coordinate direction under the tangent map, measured with the
// two metrics directly (frame-free, so the oracle is an independent route).
struct StretchData {
  Matrix pullback_form;  // Dphi^T g_N(phi x) Dphi
  Matrix metric_src;     // g_M(x)
};

StretchData stretch_data(const Diffeomorphism& phi, const Vector& x) {
  const Matrix jac = jacobian_matrix(phi, x);
  const Matrix g_tgt = phi.target.metric_at(phi.map_forward(x));
  StretchData data;
  data.pullback_form = jac.transpose() * g_tgt * jac;
  data.metric_src = phi.source.metric_at(x);
  return data;
}

// Exact extremal stretch over a subspace spanned by the columns of `basis`:
// generalized Rayleigh quotient extremes of (B^T A B, B^T G B).
void subspace_extremes(const StretchData& data, const Matrix& basis, double& lo, double& hi) {
  const Matrix a = basis.transpose() * data.pullback_form * basis;
  const Matrix g = basis.transpose() * data.metric_src * basis;
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> solver(a, g);
  const Vector values = solver.eigenvalues();
  lo = std::sqrt(std::max(values[0], 0.0));
  hi = std::sqrt(std::max(values[values.size() - 1], 0.0));
}

// Deterministic unit directions: circle sweep for n = 2, Fibonacci sphere for n = 3.
std::vector<Vector> direction_samples(int n, int resolution) {
  std::vector<Vector> dirs;
  dirs.reserve(resolution);
  if (n == 2) {
    for (int i = 0; i < resolution; ++i) {
      const double theta = M_PI * i / resolution;  // lines through the origin
      Vector d(2);
      d << std::cos(theta), std::sin(theta);
      dirs.push_back(std::move(d));
    }
  } else {
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < resolution; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / resolution;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double theta = 2.0 * M_PI * i / golden;
      Vector d(3);
      d << r * std::cos(theta), r * std::sin(theta), z;
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

// Basis of the hyperplane orthogonal to `normal` (n = 3).
Matrix plane_basis(const Vector& normal) {
  Vector seed = Vector::Unit(3, std::abs(normal[0]) < 0.9 ? 0 : 1);
  Vector u = seed - normal * normal.dot(seed);
  u.normalize();
  Vector v(3);
  v << normal[1] * u[2] - normal[2] * u[1], normal[2] * u[0] - normal[0] * u[2],
      normal[0] * u[1] - normal[1] * u[0];
  Matrix basis(3, 2);
  basis.col(0) = u;
  basis.col(1) = v;
  return basis;
}

}  // namespace

OracleInterval minimax_singular_interval(const Diffeomorphism& phi, const Vector& x,
                                         int i, int resolution) {
  const int n = phi.source.dim();
  if (n != 2 && n != 3) {
    throw NotImplementedError("minimax oracle supports n = 2 and n = 3 only");
  }
  if (i < 1 || i > n) throw ArgumentError("singular value index out of range");
  const StretchData data = stretch_data(phi, x);

  auto whole_space_extremes = [&](double& lo, double& hi) {
    subspace_extremes(data, Matrix::Identity(n, n), lo, hi);
  };

  OracleInterval result;
  if (n == 2) {
    // alpha_1 = max over directions, alpha_2 = min; the sweep is exact up to
    // the angular resolution.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const Vector& d : direction_samples(2, resolution)) {
      const double num = d.dot(data.pullback_form * d);
      const double den = d.dot(data.metric_src * d);
      const double stretch = std::sqrt(std::max(num / den, 0.0));
      lo = std::min(lo, stretch);
      hi = std::max(hi, stretch);
    }
    const double value = (i == 1) ? hi : lo;
    result.lower = result.upper = value;
    return result;
  }

  // n = 3: maximin over sampled dim-i subspaces (lower bound) and minimax
  // over sampled dim-(n-i+1) subspaces (upper bound); the inner extremum per
  // subspace is exact.
  const auto dirs = direction_samples(3, resolution);
  auto sampled_bound = [&](int dim_s, bool take_min_of_max) {
    double best = take_min_of_max ? std::numeric_limits<double>::infinity() : 0.0;
    if (dim_s == 3) {
      double lo, hi;
      whole_space_extremes(lo, hi);
      return take_min_of_max ? hi : lo;
    }
    for (const Vector& d : dirs) {
      double lo, hi;
      if (dim_s == 1) {
        const double num = d.dot(data.pullback_form * d);
        const double den = d.dot(data.metric_src * d);
        lo = hi = std::sqrt(std::max(num / den, 0.0));
      } else {
        subspace_extremes(data, plane_basis(d), lo, hi);
      }
      if (take_min_of_max) {
        best = std::min(best, hi);
      } else {
        best = std::max(best, lo);
      }
    }
    return best;
  };

  result.lower = sampled_bound(i, /*take_min_of_max=*/false);
  result.upper = sampled_bound(n - i + 1, /*take_min_of_max=*/true);
  return result;
}

double minimax_singular_oracle(const Diffeomorphism& phi, const Vector& x, int i,
                               int resolution) {
  const OracleInterval interval = minimax_singular_interval(phi, x, i, resolution);
  return (phi.source.dim() == 2) ? interval.upper : interval.lower;
}

}  // namespace pushpull
