/// @file geometry.cpp
/// @brief Curvature kernels: exact first-order geometry from metric jets,
///        Richardson-extrapolated covariant stencils for second order.

#include "solgeo/geometry.hpp"

#include <cmath>
#include <vector>

#include "solgeo/errors.hpp"

namespace solgeo {

namespace {

// Relative tolerance for the post-construction symmetry audit of curvature.
constexpr double kSymmetryTol = 1e-10;

void check_curvature_symmetries(const TensorField& R) {
  const double scale = std::max(1.0, R.max_abs());
  const int n = R.dim();
  // antisymmetry in (0,1) and (2,3), pair symmetry, first Bianchi identity
  if (symmetry_defect(R, 0, 1, -1.0) > kSymmetryTol * scale ||
      symmetry_defect(R, 2, 3, -1.0) > kSymmetryTol * scale) {
    fail(ErrorKind::internal, "curvature tensor lost its antisymmetries");
  }
  double pair_defect = 0.0, bianchi = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          pair_defect = std::max(pair_defect, std::abs(R(i, j, k, l) - R(k, l, i, j)));
          bianchi = std::max(bianchi,
                             std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
        }
  if (pair_defect > kSymmetryTol * scale || bianchi > kSymmetryTol * scale) {
    fail(ErrorKind::internal, "curvature tensor violates pair symmetry or first Bianchi");
  }
}

}  // namespace

PointGeometry point_geometry(const MetricFamily& m, const Eigen::VectorXd& x) {
  PointGeometry P;
  P.x = x;
  P.mj = evaluate_jets(m, x, 3);
  const int n = P.mj.n;
  const Eigen::MatrixXd& g = P.mj.g;
  const TensorField& dg = P.mj.dg;
  const TensorField& ddg = P.mj.ddg;
  const TensorField& dddg = P.mj.dddg;

  P.ginv = g.inverse();
  const Eigen::MatrixXd& gi = P.ginv;

  // ---- derivatives of the inverse metric -----------------------------------
  std::vector<Eigen::MatrixXd> dgi(n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd dgk(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dgk(i, j) = dg(k, i, j);
    dgi[k] = -gi * dgk * gi;
  }
  std::vector<Eigen::MatrixXd> ddgi(n * n);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd dgk(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dgk(i, j) = dg(k, i, j);
    for (int l = 0; l < n; ++l) {
      Eigen::MatrixXd dgl(n, n), ddgkl(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          dgl(i, j) = dg(l, i, j);
          ddgkl(i, j) = ddg(k, l, i, j);
        }
      ddgi[k * n + l] = -(dgi[k] * dgl * gi + gi * ddgkl * gi + gi * dgl * dgi[k]);
    }
  }

  // ---- Christoffel symbols and their coordinate derivatives ----------------
  // A_{m,ij} = d_i g_{mj} + d_j g_{mi} - d_m g_{ij}
  TensorField A(n, {3, 0}), dA(n, {4, 0}), ddA(n, {5, 0});
  for (int mm = 0; mm < n; ++mm)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        A(mm, i, j) = dg(i, mm, j) + dg(j, mm, i) - dg(mm, i, j);
        for (int l = 0; l < n; ++l) {
          dA(l, mm, i, j) = ddg(l, i, mm, j) + ddg(l, j, mm, i) - ddg(l, mm, i, j);
          for (int p = 0; p < n; ++p) {
            ddA(p, l, mm, i, j) =
                dddg(p, l, i, mm, j) + dddg(p, l, j, mm, i) - dddg(p, l, mm, i, j);
          }
        }
      }

  P.gamma = TensorField(n, {2, 1});
  P.dgamma = TensorField(n, {4, 0});
  P.ddgamma = TensorField(n, {5, 0});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int mm = 0; mm < n; ++mm) s += gi(k, mm) * A(mm, i, j);
        P.gamma(k, i, j) = 0.5 * s;
        for (int l = 0; l < n; ++l) {
          double sl = 0.0;
          for (int mm = 0; mm < n; ++mm)
            sl += dgi[l](k, mm) * A(mm, i, j) + gi(k, mm) * dA(l, mm, i, j);
          P.dgamma(l, k, i, j) = 0.5 * sl;
          for (int p = 0; p < n; ++p) {
            double sp = 0.0;
            for (int mm = 0; mm < n; ++mm) {
              sp += ddgi[p * n + l](k, mm) * A(mm, i, j) +
                    dgi[l](k, mm) * dA(p, mm, i, j) + dgi[p](k, mm) * dA(l, mm, i, j) +
                    gi(k, mm) * ddA(p, l, mm, i, j);
            }
            P.ddgamma(p, l, k, i, j) = 0.5 * sp;
          }
        }
      }

  // ---- curvature R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z - nab_[X,Y] Z -----
  // R^u_{ijk} = d_i G^u_{jk} - d_j G^u_{ik} + G^u_{ia} G^a_{jk} - G^u_{ja} G^a_{ik}
  TensorField Rup(n, {4, 0}), dRup(n, {5, 0});
  for (int u = 0; u < n; ++u)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = P.dgamma(i, u, j, k) - P.dgamma(j, u, i, k);
          for (int a = 0; a < n; ++a)
            s += P.gamma(u, i, a) * P.gamma(a, j, k) - P.gamma(u, j, a) * P.gamma(a, i, k);
          Rup(u, i, j, k) = s;
          for (int p = 0; p < n; ++p) {
            double sp = P.ddgamma(p, i, u, j, k) - P.ddgamma(p, j, u, i, k);
            for (int a = 0; a < n; ++a) {
              sp += P.dgamma(p, u, i, a) * P.gamma(a, j, k) +
                    P.gamma(u, i, a) * P.dgamma(p, a, j, k) -
                    P.dgamma(p, u, j, a) * P.gamma(a, i, k) -
                    P.gamma(u, j, a) * P.dgamma(p, a, i, k);
            }
            dRup(p, u, i, j, k) = sp;
          }
        }

  P.riemann = TensorField(n, {4, 0});
  TensorField driemann(n, {5, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int u = 0; u < n; ++u) s += g(l, u) * Rup(u, i, j, k);
          P.riemann(i, j, k, l) = s;
          for (int p = 0; p < n; ++p) {
            double sp = 0.0;
            for (int u = 0; u < n; ++u)
              sp += dg(p, l, u) * Rup(u, i, j, k) + g(l, u) * dRup(p, u, i, j, k);
            driemann(p, i, j, k, l) = sp;
          }
        }
  check_curvature_symmetries(P.riemann);

  P.nabla_riemann = TensorField(n, {5, 0});
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = driemann(p, i, j, k, l);
            for (int a = 0; a < n; ++a) {
              s -= P.gamma(a, p, i) * P.riemann(a, j, k, l) +
                   P.gamma(a, p, j) * P.riemann(i, a, k, l) +
                   P.gamma(a, p, k) * P.riemann(i, j, a, l) +
                   P.gamma(a, p, l) * P.riemann(i, j, k, a);
            }
            P.nabla_riemann(p, i, j, k, l) = s;
          }

  // ---- Ricci, scalar curvature, first covariant derivatives ----------------
  P.ricci.setZero(n, n);
  P.nabla_ricci = TensorField(n, {3, 0});
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) s += gi(i, l) * P.riemann(i, j, k, l);
      P.ricci(j, k) = s;
      for (int p = 0; p < n; ++p) {
        double sp = 0.0;
        for (int i = 0; i < n; ++i)
          for (int l = 0; l < n; ++l) sp += gi(i, l) * P.nabla_riemann(p, i, j, k, l);
        P.nabla_ricci(p, j, k) = sp;
      }
    }
  P.ricci_op = gi * P.ricci;

  P.scal = (gi * P.ricci).trace();
  P.dscal.setZero(n);
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) s += gi(j, k) * P.nabla_ricci(p, j, k);
    P.dscal[p] = s;
  }

  // ---- potential: gradient, Hessian, nabla Hessian --------------------------
  P.grad_f = gi * P.mj.df;
  P.grad_f_norm2 = P.mj.df.dot(P.grad_f);
  P.hess_f.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = P.mj.ddf(i, j);
      for (int k = 0; k < n; ++k) s -= P.gamma(k, i, j) * P.mj.df[k];
      P.hess_f(i, j) = s;
    }
  P.nabla_hess_f = TensorField(n, {3, 0});
  for (int p = 0; p < n; ++p)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = P.mj.dddf(p, i, j);
        for (int k = 0; k < n; ++k) {
          s -= P.dgamma(p, k, i, j) * P.mj.df[k] + P.gamma(k, i, j) * P.mj.ddf(p, k);
        }
        for (int a = 0; a < n; ++a) {
          s -= P.gamma(a, p, i) * P.hess_f(a, j) + P.gamma(a, p, j) * P.hess_f(i, a);
        }
        P.nabla_hess_f(p, i, j) = s;
      }

  // ---- curvature scalars coupled to the potential ---------------------------
  const Eigen::MatrixXd ric_up = gi * P.ricci * gi;  // both indices raised
  P.ric_norm2 = (ric_up.array() * P.ricci.array()).sum();
  P.d_ric_norm2.setZero(n);
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += 2.0 * ric_up(a, b) * P.nabla_ricci(p, a, b);
    P.d_ric_norm2[p] = s;
  }

  P.ric_radial = P.grad_f.dot(P.ricci * P.grad_f);
  P.d_ric_radial.setZero(n);
  const Eigen::MatrixXd hess_up = gi * P.hess_f;  // (nabla_p grad f)^a = g^{ac} H_{cp}
  for (int p = 0; p < n; ++p) {
    double s = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        s += P.nabla_ricci(p, a, b) * P.grad_f[a] * P.grad_f[b];
      }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        s += 2.0 * P.ricci(a, b) * P.grad_f[b] * hess_up(a, p);
      }
    P.d_ric_radial[p] = s;
  }

  // ---- orthonormal frame (modified Gram-Schmidt against g) ------------------
  P.frame = Eigen::MatrixXd::Identity(n, n);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXd v = P.frame.col(a);
    for (int b = 0; b < a; ++b) {
      const Eigen::VectorXd eb = P.frame.col(b);
      v -= (v.dot(g * eb)) * eb;
    }
    const double nrm = std::sqrt(v.dot(g * v));
    if (!(nrm > 1e-12)) fail(ErrorKind::degenerate_metric, "frame construction failed");
    P.frame.col(a) = v / nrm;
  }

  return P;
}

// --- frame utilities ---------------------------------------------------------

TensorField frame_components(const TensorField& T, const Eigen::MatrixXd& E) {
  const int n = T.dim();
  const int r = T.rank();
  TensorField cur = T;
  std::size_t total = cur.data().size();
  for (int s = 0; s < r; ++s) {
    TensorField next(n, T.valence());
    std::size_t stride = 1;
    for (int q = r - 1; q > s; --q) stride *= n;
    const std::size_t block = stride * n;
    for (std::size_t base = 0; base < total; base += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        for (int a = 0; a < n; ++a) {
          double acc = 0.0;
          for (int i = 0; i < n; ++i) {
            acc += cur.data()[base + i * stride + inner] * E(i, a);
          }
          next.data()[base + a * stride + inner] = acc;
        }
      }
    }
    cur = next;
  }
  cur.set_base_point(T.base_point());
  return cur;
}

Eigen::MatrixXd frame_components(const Eigen::MatrixXd& T02, const Eigen::MatrixXd& E) {
  return E.transpose() * T02 * E;
}

Eigen::VectorXd frame_components(const Eigen::VectorXd& T01, const Eigen::MatrixXd& E) {
  return E.transpose() * T01;
}

double sectional_curvature(const TensorField& R_frame, int a, int b) {
  return R_frame(a, b, b, a);
}

double metric_norm(const TensorField& T_cov, const Eigen::MatrixXd& E) {
  return frame_components(T_cov, E).frobenius();
}

double soliton_residual(const MetricFamily& m, const PointGeometry& P) {
  const Eigen::MatrixXd defect = P.ricci + P.hess_f - m.lambda * P.mj.g;
  return frame_components(defect, P.frame).norm();
}

// --- stencil machinery --------------------------------------------------------

namespace {

Eigen::VectorXd shifted(const Eigen::VectorXd& x, int dir, double delta) {
  Eigen::VectorXd y = x;
  y[dir] += delta;
  return y;
}

/// Richardson-extrapolated first difference of four samples at +-h, +-h/2.
template <class V>
V richardson1(const V& ph, const V& mh, const V& ph2, const V& mh2, double h) {
  V full = (1.0 / (2.0 * h)) * (ph - mh);
  V half = (1.0 / h) * (ph2 - mh2);
  return (1.0 / 3.0) * (4.0 * half - full);
}

TensorField scale_tf(double c, const TensorField& t) { return c * t; }

}  // namespace

EllipticTerms elliptic_terms(const MetricFamily& m, const PointGeometry& c,
                             const StencilScheme& scheme) {
  const int n = c.mj.n;
  const double h = scheme.step;
  const Eigen::MatrixXd& gi = c.ginv;

  // Per-direction coordinate derivatives of the analytic first-derivative
  // fields, each Richardson-extrapolated from samples at +-h and +-h/2.
  std::vector<Eigen::VectorXd> d_dscal(n), d_du(n);
  std::vector<TensorField> d_nric(n), d_nriem(n);
  for (int dir = 0; dir < n; ++dir) {
    PointGeometry Pp = point_geometry(m, shifted(c.x, dir, h));
    PointGeometry Pm = point_geometry(m, shifted(c.x, dir, -h));
    PointGeometry Pp2 = point_geometry(m, shifted(c.x, dir, 0.5 * h));
    PointGeometry Pm2 = point_geometry(m, shifted(c.x, dir, -0.5 * h));
    d_dscal[dir] = richardson1(Pp.dscal, Pm.dscal, Pp2.dscal, Pm2.dscal, h);
    d_du[dir] = richardson1(Pp.d_ric_radial, Pm.d_ric_radial, Pp2.d_ric_radial,
                            Pm2.d_ric_radial, h);
    {
      TensorField full = scale_tf(1.0 / (2.0 * h), Pp.nabla_ricci - Pm.nabla_ricci);
      TensorField half = scale_tf(1.0 / h, Pp2.nabla_ricci - Pm2.nabla_ricci);
      d_nric[dir] = scale_tf(1.0 / 3.0, 4.0 * half - full);
    }
    {
      TensorField full = scale_tf(1.0 / (2.0 * h), Pp.nabla_riemann - Pm.nabla_riemann);
      TensorField half = scale_tf(1.0 / h, Pp2.nabla_riemann - Pm2.nabla_riemann);
      d_nriem[dir] = scale_tf(1.0 / 3.0, 4.0 * half - full);
    }
  }

  EllipticTerms out;

  // Hessian and f-Laplacian of scal:  (nab^2 s)_{mp} = d_m (ds)_p - G^a_{mp} (ds)_a
  out.hess_scal.resize(n, n);
  for (int mm = 0; mm < n; ++mm)
    for (int p = 0; p < n; ++p) {
      double s = d_dscal[mm][p];
      for (int a = 0; a < n; ++a) s -= c.gamma(a, mm, p) * c.dscal[a];
      out.hess_scal(mm, p) = s;
    }
  out.lap_f_scal = (gi * out.hess_scal).trace() - c.grad_f.dot(c.dscal);

  // f-Laplacian of the radial scalar Ric(grad f, grad f)
  Eigen::MatrixXd hess_u(n, n);
  for (int mm = 0; mm < n; ++mm)
    for (int p = 0; p < n; ++p) {
      double s = d_du[mm][p];
      for (int a = 0; a < n; ++a) s -= c.gamma(a, mm, p) * c.d_ric_radial[a];
      hess_u(mm, p) = s;
    }
  out.lap_f_ric_radial = (gi * hess_u).trace() - c.grad_f.dot(c.d_ric_radial);

  // f-Laplacian of Ricci: difference the analytic S = nabla Ric (0,3) field.
  const TensorField& S = c.nabla_ricci;
  out.lap_f_ricci.setZero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int mm = 0; mm < n; ++mm)
        for (int p = 0; p < n; ++p) {
          double nn = d_nric[mm](p, j, k);
          for (int a = 0; a < n; ++a) {
            nn -= c.gamma(a, mm, p) * S(a, j, k) + c.gamma(a, mm, j) * S(p, a, k) +
                  c.gamma(a, mm, k) * S(p, j, a);
          }
          acc += gi(mm, p) * nn;
        }
      for (int p = 0; p < n; ++p) acc -= c.grad_f[p] * S(p, j, k);
      out.lap_f_ricci(j, k) = acc;
    }

  // f-Laplacian of the (0,4) curvature: same pattern one rank up.
  const TensorField& T = c.nabla_riemann;
  out.lap_f_riemann = TensorField(n, {4, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int mm = 0; mm < n; ++mm)
            for (int p = 0; p < n; ++p) {
              double nn = d_nriem[mm](p, i, j, k, l);
              for (int a = 0; a < n; ++a) {
                nn -= c.gamma(a, mm, p) * T(a, i, j, k, l) +
                      c.gamma(a, mm, i) * T(p, a, j, k, l) +
                      c.gamma(a, mm, j) * T(p, i, a, k, l) +
                      c.gamma(a, mm, k) * T(p, i, j, a, l) +
                      c.gamma(a, mm, l) * T(p, i, j, k, a);
              }
              acc += gi(mm, p) * nn;
            }
          for (int p = 0; p < n; ++p) acc -= c.grad_f[p] * T(p, i, j, k, l);
          out.lap_f_riemann(i, j, k, l) = acc;
        }

  return out;
}

// --- generic covariant stencils ------------------------------------------------

namespace {

/// Offset arithmetic for slot substitution: returns the flat offset of the
/// index tuple `off` with slot s replaced by value a.
inline std::size_t subst(std::size_t off, int s, int a, int n, const std::vector<std::size_t>& strides) {
  const std::size_t stride = strides[s];
  const int cur = static_cast<int>((off / stride) % static_cast<std::size_t>(n));
  return off + (static_cast<std::size_t>(a) - static_cast<std::size_t>(cur)) * stride;
}

std::vector<std::size_t> slot_strides(int rank, int n) {
  std::vector<std::size_t> st(rank, 1);
  for (int s = rank - 2; s >= 0; --s) st[s] = st[s + 1] * static_cast<std::size_t>(n);
  return st;
}

}  // namespace

TensorField covariant_derivative(const MetricFamily& /*m*/, const PointGeometry& c,
                                 const FieldOracle& field, const StencilScheme& scheme) {
  const int n = c.mj.n;
  const double h = scheme.step;
  TensorField T0 = field(c.x);
  const int r = T0.rank();
  const std::vector<std::size_t> strides = slot_strides(r, n);
  const std::size_t count = T0.data().size();

  std::vector<TensorField> dT(n);
  for (int dir = 0; dir < n; ++dir) {
    TensorField ph = field(shifted(c.x, dir, h));
    TensorField mh = field(shifted(c.x, dir, -h));
    TensorField ph2 = field(shifted(c.x, dir, 0.5 * h));
    TensorField mh2 = field(shifted(c.x, dir, -0.5 * h));
    TensorField full = scale_tf(1.0 / (2.0 * h), ph - mh);
    TensorField half = scale_tf(1.0 / h, ph2 - mh2);
    dT[dir] = scale_tf(1.0 / 3.0, 4.0 * half - full);
  }

  TensorField out(n, {r + 1, 0});
  for (int p = 0; p < n; ++p) {
    for (std::size_t off = 0; off < count; ++off) {
      double s = dT[p].data()[off];
      for (int slot = 0; slot < r; ++slot) {
        const int is = static_cast<int>((off / strides[slot]) % static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
          s -= c.gamma(a, p, is) * T0.data()[subst(off, slot, a, n, strides)];
        }
      }
      out.data()[static_cast<std::size_t>(p) * count + off] = s;
    }
  }
  out.set_base_point(c.x);
  return out;
}

TensorField f_laplacian(const MetricFamily& /*m*/, const PointGeometry& c,
                        const FieldOracle& field, const StencilScheme& scheme) {
  const int n = c.mj.n;
  const double h = scheme.step;
  TensorField T0 = field(c.x);
  const int r = T0.rank();
  const std::vector<std::size_t> strides = slot_strides(r, n);
  const std::size_t count = T0.data().size();

  // first differences and pure second differences per direction
  std::vector<TensorField> dT(n), d2T(n);
  std::vector<TensorField> Tph(n), Tmh(n), Tph2(n), Tmh2(n);
  for (int dir = 0; dir < n; ++dir) {
    Tph[dir] = field(shifted(c.x, dir, h));
    Tmh[dir] = field(shifted(c.x, dir, -h));
    Tph2[dir] = field(shifted(c.x, dir, 0.5 * h));
    Tmh2[dir] = field(shifted(c.x, dir, -0.5 * h));
    TensorField full = scale_tf(1.0 / (2.0 * h), Tph[dir] - Tmh[dir]);
    TensorField half = scale_tf(1.0 / h, Tph2[dir] - Tmh2[dir]);
    dT[dir] = scale_tf(1.0 / 3.0, 4.0 * half - full);
    TensorField two_t0 = scale_tf(2.0, T0);
    TensorField fullp = scale_tf(1.0 / (h * h), Tph[dir] + Tmh[dir] - two_t0);
    TensorField halfp = scale_tf(4.0 / (h * h), Tph2[dir] + Tmh2[dir] - two_t0);
    d2T[dir] = scale_tf(1.0 / 3.0, 4.0 * halfp - fullp);
  }

  // mixed second differences (upper triangle), two Richardson rings
  std::vector<TensorField> mixed(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto corner = [&](double da, double db) {
        Eigen::VectorXd y = c.x;
        y[a] += da;
        y[b] += db;
        return field(y);
      };
      TensorField full = scale_tf(
          1.0 / (4.0 * h * h),
          (corner(h, h) - corner(h, -h)) - (corner(-h, h) - corner(-h, -h)));
      const double h2 = 0.5 * h;
      TensorField half = scale_tf(
          1.0 / (4.0 * h2 * h2),
          (corner(h2, h2) - corner(h2, -h2)) - (corner(-h2, h2) - corner(-h2, -h2)));
      mixed[a * n + b] = scale_tf(1.0 / 3.0, 4.0 * half - full);
    }
  auto d2 = [&](int a, int b) -> const TensorField& {
    if (a == b) return d2T[a];
    return mixed[std::min(a, b) * n + std::max(a, b)];
  };

  // first covariant derivative at the center (rank r+1, derivative slot first)
  TensorField nabT(n, {r + 1, 0});
  for (int p = 0; p < n; ++p)
    for (std::size_t off = 0; off < count; ++off) {
      double s = dT[p].data()[off];
      for (int slot = 0; slot < r; ++slot) {
        const int is = static_cast<int>((off / strides[slot]) % static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
          s -= c.gamma(a, p, is) * T0.data()[subst(off, slot, a, n, strides)];
      }
      nabT.data()[static_cast<std::size_t>(p) * count + off] = s;
    }

  // trace of the second covariant derivative, minus the radial term
  TensorField out(n, T0.valence());
  for (std::size_t off = 0; off < count; ++off) {
    double acc = 0.0;
    for (int mm = 0; mm < n; ++mm)
      for (int p = 0; p < n; ++p) {
        double s = d2(mm, p).data()[off];
        for (int slot = 0; slot < r; ++slot) {
          const int is = static_cast<int>((off / strides[slot]) % static_cast<std::size_t>(n));
          for (int a = 0; a < n; ++a) {
            const std::size_t o2 = subst(off, slot, a, n, strides);
            s -= c.dgamma(mm, a, p, is) * T0.data()[o2] +
                 c.gamma(a, p, is) * dT[mm].data()[o2];
          }
        }
        for (int b = 0; b < n; ++b) {
          s -= c.gamma(b, mm, p) * nabT.data()[static_cast<std::size_t>(b) * count + off];
        }
        for (int slot = 0; slot < r; ++slot) {
          const int is = static_cast<int>((off / strides[slot]) % static_cast<std::size_t>(n));
          for (int b = 0; b < n; ++b) {
            const std::size_t o2 = subst(off, slot, b, n, strides);
            s -= c.gamma(b, mm, is) * nabT.data()[static_cast<std::size_t>(p) * count + o2];
          }
        }
        acc += c.ginv(mm, p) * s;
      }
    for (int p = 0; p < n; ++p)
      acc -= c.grad_f[p] * nabT.data()[static_cast<std::size_t>(p) * count + off];
    out.data()[off] = acc;
  }
  out.set_base_point(c.x);
  return out;
}

}  // namespace solgeo
