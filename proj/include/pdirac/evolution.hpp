#pragma once

#include <iosfwd>
#include <vector>

#include "pdirac/spinor_basis.hpp"

namespace pdirac
{

/// exp(-i slash(k) dτ) in closed form from slash(k)² = -k·k: trigonometric for timelike k,
/// hyperbolic for spacelike k, I - i slash(k) dτ on the light cone.
SpinorMatrix mode_propagator(const FourVector& k, double dtau, const GammaBasis& g = GammaBasis::dirac());

/// Free field on a periodic (t, z) lattice, held as one spinor coefficient per lattice wavenumber:
///   ψ(t, z, τ) = Σ_k c_k(τ) exp(i(-k⁰ t + k³ z)),  k⁰ = 2π n₀/T,  k³ = 2π n₃/Z.
class SpectralField
{
  public:
    SpectralField(int n_t, int n_z, double period_t, double period_z, const GammaBasis& g = GammaBasis::dirac());

    int n_t() const noexcept { return n_t_; }
    int n_z() const noexcept { return n_z_; }
    double period_t() const noexcept { return period_t_; }
    double period_z() const noexcept { return period_z_; }
    double tau() const noexcept { return tau_; }
    const GammaBasis& basis() const noexcept { return *g_; }

    /// Phase momentum of mode (i_t, i_z), using signed frequencies.
    FourVector mode_momentum(int i_t, int i_z) const;
    Spinor& coeff(int i_t, int i_z) { return c_[index(i_t, i_z)]; }
    const Spinor& coeff(int i_t, int i_z) const { return c_[index(i_t, i_z)]; }

    /// Adds a plane wave (amplitude times normalization factor) whose phase momentum lies on
    /// the lattice with zero transverse components; its τ-phase is taken at the field's τ.
    /// Throws std::invalid_argument otherwise.
    void add_wave(const PlaneWave& w);

    /// Lattice samples ψ(t_a, z_b), index a·n_z + b, by inverse FFT.
    std::vector<Spinor> to_samples() const;
    /// Replaces the coefficients by the FFT of lattice samples.
    void from_samples(const std::vector<Spinor>& samples);

    /// Direct mode sum at an arbitrary (t, z).
    Spinor evaluate(double t, double z) const;

    /// Σ over timelike modes of |ū c|² + |v̄ c|² (u, v of the mode's basis); conserved by free flow.
    double branch_norm() const;
    /// Σ c̄ c over all modes; conserved by free flow.
    cplx dirac_sum() const;
    /// Σ c† c
    double plain_norm() const;
    /// Number of spacelike or null modes carrying nonzero coefficients.
    int spacelike_modes() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator*=(cplx s);

  private:
    std::size_t index(int i_t, int i_z) const;
    void set_tau(double tau) { tau_ = tau; }
    friend SpectralField evolve_free(const SpectralField& field, double dtau);
    friend SpectralField tpc_conjugate(const SpectralField& field);

    int n_t_;
    int n_z_;
    double period_t_;
    double period_z_;
    double tau_ = 0.0;
    const GammaBasis* g_;
    std::vector<Spinor> c_;
};

/// Advances every mode by mode_propagator(k, dtau).
SpectralField evolve_free(const SpectralField& field, double dtau);

/// (TPC ψ)(x) = -iγ⁵ψ(-x): c(-k) ← -iγ⁵ c(k). Throws std::domain_error if a Nyquist mode is occupied.
SpectralField tpc_conjugate(const SpectralField& field);

/// Measured dx⁰/dτ of a constant-phase point of a single-mode field: f⁽⁺⁾_p for branch +1,
/// f⁽⁻⁾_p for branch -1. p must have p⁰ > 0 and no transverse momentum.
double phase_velocity_probe(const OnShellMomentum& p, int branch, const GammaBasis& g = GammaBasis::dirac());

/// CSV snapshot: header "tau,t,z,density", one row per lattice point with density ψ†ψ.
void write_snapshot_csv(std::ostream& os, const SpectralField& field);

}  // namespace pdirac
