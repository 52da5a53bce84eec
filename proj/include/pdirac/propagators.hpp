#pragma once

#include <array>
#include <vector>

#include "pdirac/spinor_basis.hpp"

namespace pdirac
{

/// A space-time event together with its parameter value, w = (x, τ).
struct Event
{
    FourVector x;
    double tau = 0.0;
};

/// Finite set of off-shell (virtual) momenta standing in for ∫d⁴p.
///
/// δ⁴(p - q) on the grid is a Kronecker delta divided by the cell volume, so each
/// surviving mode carries weight = cell volume.
struct MomentumGrid
{
    std::vector<FourVector> momenta;
    double weight = 1.0;

    /// Reciprocal lattice of a periodic space-time box of edge L: p = 2π n / L with
    /// n^μ in [-n_max, n_max]. Spacelike, null and p⁰ = 0 points are dropped.
    static MomentumGrid reciprocal(double L, int n_max);

    /// Single lattice mode p (which must lie on the reciprocal lattice of edge L).
    static MomentumGrid single(const FourVector& p, double L);

    /// Keep only modes with the given sign of p⁰.
    MomentumGrid with_energy_sign(int sign) const;
};

enum class KernelDirection
{
    forward,   ///< Γ⁰₊
    backward,  ///< Γ⁰₋
};

struct FermionKernelSpec
{
    MomentumGrid grid;
    KernelDirection direction = KernelDirection::forward;
    const GammaBasis* basis = &GammaBasis::dirac();
};

/// The only two tensor products that occur inside the kernel. Mixed products
/// f h̄ and h f̄ are kinematically excluded and have no representation here.
enum class KernelTermKind
{
    particle_pair,      ///< + f⁽⁺⁾_p(w) f̄⁽⁺⁾_p(w')
    antiparticle_pair,  ///< - h⁽⁻⁾_p(w) h̄⁽⁻⁾_p(w')
};

struct KernelTerm
{
    FourVector p;
    KernelTermKind kind;
    cplx coefficient;    ///< ±i × weight × θ-factors, including the bracket sign
    SpinorMatrix outer;  ///< spin-summed Σ_s ψ_s(w) ψ̄_s(w')
};

/// Nonzero summands of the discretized kernel at (w, w'). Throws on τ = τ'.
std::vector<KernelTerm> kernel_terms(const FermionKernelSpec& spec, const Event& w, const Event& w_prime);

/// Γ⁰±(w - w') = Σ coefficient × outer over kernel_terms. Throws std::domain_error("theta ambiguity") on τ = τ'.
SpinorMatrix fermion_kernel(const FermionKernelSpec& spec, const Event& w, const Event& w_prime);

/// Periodic space-time lattice of n⁴ points with edge L, used to quadrature ∫d⁴z.
struct SpaceTimeLattice
{
    double edge = 1.0;
    int points = 4;

    double cell_volume() const;
    template <class F>
    void for_each(F&& f) const
    {
        const double h = edge / points;
        for (int a = 0; a < points; ++a)
            for (int b = 0; b < points; ++b)
                for (int c = 0; c < points; ++c)
                    for (int d = 0; d < points; ++d) f(FourVector{a * h, b * h, c * h, d * h});
    }
};

/// (1/i) ∫d⁴z {θ(τ-ρ) Γ⁰₊ - θ(ρ-τ) Γ⁰₋}(x - z, τ - ρ) ψ(z, ρ), quadrature on the lattice.
/// The grid's basis pointer is ignored in favor of each direction's spec.
Spinor propagate(const FermionKernelSpec& forward, const FermionKernelSpec& backward, const SpinorField& psi,
                 const Event& at, double rho, const SpaceTimeLattice& lattice);

using Tensor2 = Eigen::Matrix4d;
using ComplexTensor2 = Eigen::Matrix4cd;

/// G^{λν} = g^{λν} + k^λ k^ν / ϖ². Throws for ϖ = 0.
Tensor2 boson_numerator(const FourVector& k, double varpi);

/// Three polarizations with k_μ ε_j^μ = 0 and ε_i·ε_j = δ_ij, by Minkowski Gram-Schmidt.
/// Requires timelike k.
std::array<FourVector, 3> polarization_triple(const FourVector& k);

/// Σ_j ε_j^λ ε_j^ν
Tensor2 polarization_sum(const std::array<FourVector, 3>& eps);

/// D^{λν} = G^{λν} / (k·k + ϖ²), or g^{λν} / (k·k) for ϖ = 0.
///
/// A nonzero contour_offset ε shifts the pole as k⁰ → k⁰ ± iε (retarded for ϖ ≥ 0,
/// advanced for ϖ < 0). On the pole with zero offset throws std::domain_error.
ComplexTensor2 boson_influence(const FourVector& k, double varpi, double contour_offset = 0.0);

/// a_λ T^{λν} b_ν with both vectors given contravariantly.
cplx contract(const Eigen::Vector4cd& a, const ComplexTensor2& t, const Eigen::Vector4cd& b);

}  // namespace pdirac
