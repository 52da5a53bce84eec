#pragma once

#include <functional>
#include <vector>

#include "pdirac/spinor_basis.hpp"

namespace pdirac
{

/// ψ ⊗ ξ with index a·4 + b (first slot a, second slot b).
using TwoSpinor = Eigen::Matrix<cplx, 16, 1>;
using TwoSpinorMatrix = Eigen::Matrix<cplx, 16, 16>;

TwoSpinor kron(const Spinor& a, const Spinor& b);
TwoSpinorMatrix kron(const SpinorMatrix& a, const SpinorMatrix& b);

/// Exchange of the two spinor slots, (swap Ψ)_{ab} = Ψ_{ba}.
TwoSpinor swap_slots(const TwoSpinor& psi);

enum class Construction
{
    separable,
    antisymmetric,  ///< Ψ₋ = ψ⊗ξ - ξ⊗ψ
    symmetric,      ///< Ψ₊ = ψ⊗ξ + ξ⊗ψ
};

/// Ψ(x, y, τ) = Σ_k c_k first_k(x, τ) ⊗ second_k(y, τ).
class TwoParticleState
{
  public:
    struct Product
    {
        double coefficient;
        SpinorField first;
        SpinorField second;
    };

    TwoParticleState(std::vector<Product> terms, Construction tag);

    static TwoParticleState separable(SpinorField psi, SpinorField xi);

    TwoSpinor operator()(const FourVector& x, const FourVector& y, double tau) const;

    Construction construction() const noexcept { return tag_; }
    const std::vector<Product>& terms() const noexcept { return terms_; }

  private:
    std::vector<Product> terms_;
    Construction tag_;
};

/// ψ⊗ξ + sign·ξ⊗ψ with sign = -1 (Ψ₋) or +1 (Ψ₊).
TwoParticleState build_entangled(SpinorField psi, SpinorField xi, int sign);

/// (1/i)∂_τΨ + slash(π(x))⊗I₄ Ψ + I₄⊗slash(π(y)) Ψ with π_μ = (1/i)∂_μ - e A_μ, by central
/// differences of step h.
TwoSpinor two_particle_residual(const TwoParticleState& state, const FourVector& x, const FourVector& y, double tau,
                                const Potential& potential = {}, double charge_x = 0.0, double charge_y = 0.0,
                                double h = 1e-4, const GammaBasis& g = GammaBasis::dirac());

/// Ψ̄ (γ^λ⊗I + I⊗γ^λ) Ψ with Ψ̄ = Ψ†(γ⁰⊗γ⁰).
Eigen::Vector4d two_particle_current(const TwoSpinor& psi, const GammaBasis& g = GammaBasis::dirac());

/// Sample points x = origin + a, y = origin + a - d, with the separations d on an n⁴ lattice
/// spanning extent[μ] along each axis.
struct CurrentGrid
{
    FourVector origin;
    FourVector translation;
    std::array<double, 4> extent{1.0, 1.0, 1.0, 1.0};
    int points = 4;
    double tau = 0.0;

    /// Extent set to one period of the relative phase (k_ψ - k_ξ)·d along each axis.
    static CurrentGrid relative_phase_period(const PlaneWave& psi, const PlaneWave& xi, int points = 4);
};

struct CurrentReport
{
    std::vector<FourVector> x;
    std::vector<FourVector> y;
    std::vector<Eigen::Vector4d> total;
    std::vector<Eigen::Vector4d> parts;
    std::vector<Eigen::Vector4d> interference;  ///< total - parts
    double nonadditivity_norm = 0.0;            ///< root mean square of |interference| over the grid
};

/// Parts are the currents of each separable product on its own, Σ_k c_k² J[first_k ⊗ second_k].
CurrentReport current_report(const TwoParticleState& state, const CurrentGrid& grid,
                             const GammaBasis& g = GammaBasis::dirac());

}  // namespace pdirac
