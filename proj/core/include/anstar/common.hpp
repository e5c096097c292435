#ifndef ANSTAR_COMMON_HPP
#define ANSTAR_COMMON_HPP

// Shared aliases and error helpers for the AN-group star-product library.

#include <complex>
#include <stdexcept>
#include <string>
#include <cmath>

#include <Eigen/Dense>

namespace anstar {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx iunit{0.0, 1.0};

// Deformation parameters nu and hbar are tied by nu = hbar/(2i); public
// interfaces take real hbar only and derive nu where a series needs it.
inline cplx nu_of_hbar(double hbar) { return cplx(0.0, -0.5 * hbar); }

// Precondition violation (caller error).
inline void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Internal consistency failure (numerical check broke down).
inline void ensure(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

inline bool approx_eq(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace anstar

#endif  // ANSTAR_COMMON_HPP
