#pragma once

#include <array>
#include <vector>

#include "cbottle/numerics.hpp"

namespace cbottle::quantum {

// Discretization and truncation parameters of the quantized system.
struct QuantumConfig {
    double h = 0.1;          // semiclassical parameter
    double epsilon = 0.31622776601683794;  // sqrt(0.1)
    double radius = 2.2;     // domain truncation R (Dirichlet wall)
    int grid_n = 4000;       // radial grid points
    int m_max = -1;          // largest |m|; -1 = widen automatically
    double e_max = 1.5;      // energy cutoff

    // Throws ConfigError unless V(R) >= e_max + 1, grid_n >= 200, h > 0,
    // epsilon >= 0.
    void validate() const;
};

// One joint eigenvalue: radial index n within sector m, energy, and j = m*h.
struct SpectrumPoint {
    int n = 0;
    int m = 0;
    double energy = 0.0;
    double j = 0.0;
};

// Eigenvalue of the perturbed operator: energy + i*epsilon*j.
struct ComplexSpectrumPoint {
    double re = 0.0;
    double im = 0.0;
};

/// Sector operator for angular quantum number m: the substitution
/// u = sqrt(r) psi turns the radial part of the quantized Hamiltonian into
///   -(h^2/2) (u'' - ((m^2 - 1/4)/r^2) u) + (r^4 - r^2) u   on L^2(dr),
/// discretized by central differences on the offset grid
/// r_i = (i + 1/2) R/N with a Dirichlet condition at r = R. Entries:
///   diag[i] = h^2/dr^2 + (m^2 - 1/4) h^2 / (2 r_i^2) + V(r_i)
///   off[i]  = -h^2 / (2 dr^2)
numerics::TridiagonalSym radial_matrix(int m, const QuantumConfig& cfg);

/// Ascending sector eigenvalues not exceeding cfg.e_max.
std::vector<double> sector_eigenvalues(int m, const QuantumConfig& cfg);

/// Smallest m >= 1 whose sector has no eigenvalue below e_max, minus one;
/// honors cfg.m_max when it is >= 0.
int auto_m_max(const QuantumConfig& cfg);

/// Joint spectrum of (H, J): union over m in [-m_max, m_max] of sector
/// eigenvalues with j = m*h, sorted by (m, n). Sectors solve in parallel;
/// the result is identical to joint_spectrum_serial at any thread count.
std::vector<SpectrumPoint> joint_spectrum(const QuantumConfig& cfg);

/// Single-threaded reference implementation with identical output.
std::vector<SpectrumPoint> joint_spectrum_serial(const QuantumConfig& cfg);

/// Spectrum of H + i*epsilon*J: (E, j) -> E + i*epsilon*j, bijective.
std::vector<ComplexSpectrumPoint> perturbed_spectrum(
    const std::vector<SpectrumPoint>& js, double epsilon);

/// chi(u1, u2) = (u1, epsilon*u2) and its inverse (epsilon > 0 required).
std::array<double, 2> chi(const std::array<double, 2>& u, double epsilon);
std::array<double, 2> chi_inverse(const std::array<double, 2>& u,
                                  double epsilon);

}  // namespace cbottle::quantum
