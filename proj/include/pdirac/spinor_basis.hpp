#pragma once

#include <functional>
#include <numbers>

#include "pdirac/clifford.hpp"
#include "pdirac/minkowski.hpp"

namespace pdirac
{

using SpinorPair = Eigen::Matrix<cplx, 4, 2>;

/// The (u_p, v_p) block: columns u₁, u₂ and v₁, v₂.
///
/// Normalized so that ū u = I₂, v̄ v = -I₂, ū v = 0 and u ū - v v̄ = I₄.
/// The block is an even function of p.
struct SpinorBlock
{
    SpinorPair u;
    SpinorPair v;
    FourVector p;

    Spinor u_col(int spin) const;
    Spinor v_col(int spin) const;

    /// Σ_s u_s ū_s
    SpinorMatrix u_projector(const GammaBasis& g = GammaBasis::dirac()) const;
    /// Σ_s v_s v̄_s
    SpinorMatrix v_projector(const GammaBasis& g = GammaBasis::dirac()) const;
};

/// Spinor representation S(Λ) of a pure boost with rapidity eta along unit vector n.
SpinorMatrix spinor_boost(const std::array<double, 3>& n, double eta, const GammaBasis& g = GammaBasis::dirac());

/// S(Λ) for the pure boost taking the rest frame to p (p⁰ > 0).
SpinorMatrix spinor_boost(const OnShellMomentum& p, const GammaBasis& g = GammaBasis::dirac());

/// Rest-frame block boosted to φ_p p. Throws std::domain_error for non-subluminal p.
SpinorBlock build_basis(const FourVector& p, const GammaBasis& g = GammaBasis::dirac());
/// Same, with the cached mass of p; use this when m is much smaller than the energy.
SpinorBlock build_basis(const OnShellMomentum& p, const GammaBasis& g = GammaBasis::dirac());

/// Plane-wave normalization: 1/(2π)² in the continuum, 1/L² in a space-time box of edge L.
struct WaveNormalization
{
    enum class Kind
    {
        continuum,
        box
    };

    Kind kind = Kind::continuum;
    double edge = 2.0 * std::numbers::pi;

    static WaveNormalization continuum() { return {}; }
    static WaveNormalization box(double L);

    double factor() const;
};

/// Which of the three free plane-wave families a wave belongs to.
enum class WaveKind
{
    particle,      ///< f⁽⁺⁾_p = u_p e^{iχ⁽⁺⁾}, forward-propagating
    negative,      ///< f⁽⁻⁾_p = v_p e^{iχ⁽⁻⁾}, backward-propagating
    antiparticle,  ///< h⁽⁻⁾_p = -i f⁽⁻⁾_{-p}, backward-propagating
};

/// A free solution of the parametrized Dirac equation,
///   psi(x, τ) = N · a · exp(i (k·x + ω τ)),
/// with spinor amplitude a, phase momentum k and τ-frequency ω fixed by the kind.
class PlaneWave
{
  public:
    PlaneWave(WaveKind kind, OnShellMomentum p, int spin, WaveNormalization norm = {},
              const GammaBasis& g = GammaBasis::dirac());

    static PlaneWave particle(const OnShellMomentum& p, int spin, WaveNormalization norm = {},
                              const GammaBasis& g = GammaBasis::dirac());
    static PlaneWave negative(const OnShellMomentum& p, int spin, WaveNormalization norm = {},
                              const GammaBasis& g = GammaBasis::dirac());

    WaveKind kind() const noexcept { return kind_; }
    const OnShellMomentum& momentum() const noexcept { return p_; }
    int spin() const noexcept { return spin_; }
    const WaveNormalization& normalization() const noexcept { return norm_; }
    const GammaBasis& basis() const noexcept { return *g_; }

    /// +1 for f⁽⁺⁾ (forward in x⁰ as τ grows), -1 for f⁽⁻⁾ and h⁽⁻⁾.
    int branch() const noexcept { return kind_ == WaveKind::particle ? +1 : -1; }

    /// Spinor amplitude a, without the normalization factor.
    const Spinor& amplitude() const noexcept { return amplitude_; }
    FourVector phase_momentum() const noexcept { return k_; }
    double tau_frequency() const noexcept { return omega_; }

    /// χ = k·x + ω τ
    double phase(const FourVector& x, double tau) const { return dot(k_, x) + omega_ * tau; }

    Spinor operator()(const FourVector& x, double tau) const;

    PlaneWave with_normalization(WaveNormalization norm) const;

  private:
    WaveKind kind_;
    OnShellMomentum p_;
    int spin_;
    WaveNormalization norm_;
    const GammaBasis* g_;
    Spinor amplitude_;
    FourVector k_;
    double omega_;
};

Spinor evaluate_wave(const PlaneWave& w, const FourVector& x, double tau);

/// Positron wave h⁽⁻⁾_p for physical p (p⁰ > 0); throws std::domain_error otherwise.
PlaneWave antiparticle_wave(const OnShellMomentum& p, int spin, WaveNormalization norm = {},
                            const GammaBasis& g = GammaBasis::dirac());

using SpinorField = std::function<Spinor(const FourVector&, double)>;
using Potential = std::function<FourVector(const FourVector&)>;

SpinorField as_field(const PlaneWave& w);

/// (TPC ψ)(x, τ) = -iγ⁵ ψ(-x, τ)
SpinorField tpc_conjugate(SpinorField psi, const GammaBasis& g = GammaBasis::dirac());

/// Left side of the single-particle equation
///   (1/i) ∂_τ ψ + γ^μ ((1/i) ∂_μ - e A_μ) ψ
/// by central differences of step h. Zero (to O(h²)) for solutions.
Spinor dirac_residual(const SpinorField& psi, const FourVector& x, double tau, double h = 1e-4,
                      const Potential& potential = {}, double charge = 0.0,
                      const GammaBasis& g = GammaBasis::dirac());

}  // namespace pdirac
