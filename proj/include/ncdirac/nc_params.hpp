#pragma once

#include <stdexcept>

#include "ncdirac/rational.hpp"

namespace ncdirac {

/// Noncommutativity parameters. Theta and eta are carried as exact symbols
/// through every derivation; the numeric values here decide only (a) whether
/// a sector is switched off exactly (value 0) and (b) what number the matrix
/// oracle binds to the symbol. The deformation vectors are fixed to
/// Theta_vec = (0,0,Theta), eta_vec = (0,0,eta).
struct NCParameters {
  double theta = 0.01;
  double eta = 0.01;
  double hbar = 1.0;

  // Bopp scaling constants; exact because they enter symbolic coefficients.
  Rational a_scale = Rational(1);
  Rational b_scale = Rational(1);

  bool theta_on() const { return theta != 0.0; }
  bool eta_on() const { return eta != 0.0; }

  static NCParameters commutative() {
    NCParameters p;
    p.theta = 0.0;
    p.eta = 0.0;
    return p;
  }

  void validate() const {
    if (a_scale.is_zero() || b_scale.is_zero())
      throw std::invalid_argument("NCParameters: scale constants must be nonzero");
    if (hbar <= 0.0) throw std::invalid_argument("NCParameters: hbar must be positive");
  }
};

/// Resolved choices for the coefficient conventions the source derivation
/// leaves implicit: how the deformation vectors embed into antisymmetric
/// matrices and which denominator the linear shift uses.
struct ConventionConfig {
  // Theta_{ab} = kappa_theta * epsilon_{abl} * Theta_l, and likewise for eta.
  Rational kappa_theta = Rational(1, 2);
  Rational kappa_eta = Rational(1, 2);
  // Shift denominator factor f in x_i -> x_i - eps_{ijk} Theta_k / (f*hbar) p_j:
  // 4 and 2 are the two published variants. The self-consistent default is 4,
  // which reproduces the published coordinate-coordinate commutator exactly
  // when kappa = 1/2.
  int bopp_denominator_factor = 4;

  void validate() const {
    if (bopp_denominator_factor != 4 && bopp_denominator_factor != 2)
      throw std::invalid_argument("ConventionConfig: bopp denominator factor must be 4 or 2");
    if (kappa_theta.is_zero() || kappa_eta.is_zero())
      throw std::invalid_argument("ConventionConfig: matrix embedding factors must be nonzero");
  }

  static ConventionConfig defaults() { return ConventionConfig{}; }

  /// kappa = 1 with the matching denominator 2; the alternative reading.
  static ConventionConfig kappa_one() {
    ConventionConfig c;
    c.kappa_theta = Rational(1);
    c.kappa_eta = Rational(1);
    c.bopp_denominator_factor = 2;
    return c;
  }
};

}  // namespace ncdirac
