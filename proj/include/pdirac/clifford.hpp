#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdirac/minkowski.hpp"

namespace pdirac
{

using cplx = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using AdjointSpinor = Eigen::RowVector4cd;
using SpinorMatrix = Eigen::Matrix4cd;

inline constexpr cplx kI{0.0, 1.0};

/// A matrix representation of the Dirac algebra {γ^μ, γ^ν} = -2 g^{μν} I₄.
///
/// Besides the four γ^μ and γ⁵ = iγ⁰γ¹γ²γ³ the basis carries the rest-frame spinor block:
/// its columns are u₁, u₂, v₁, v₂ for a particle at rest (spin up/down along the 3-axis).
/// In the Dirac-Pauli representation this block is the unit matrix.
struct GammaBasis
{
    std::string name;
    std::array<SpinorMatrix, 4> gamma;
    SpinorMatrix gamma5;
    SpinorMatrix rest_frame;

    const SpinorMatrix& operator[](int mu) const { return gamma[static_cast<std::size_t>(mu)]; }

    /// Dirac-Pauli representation.
    static const GammaBasis& dirac();
    /// Chiral (Weyl) representation, unitarily equivalent to dirac().
    static const GammaBasis& weyl();

    /// Max entrywise |{γ^μ, γ^ν} + 2 g^{μν} I| over all index pairs.
    double anticommutator_defect() const;
};

/// γ^μ p_μ
SpinorMatrix slash(const FourVector& p, const GammaBasis& g = GammaBasis::dirac());

/// Same contraction for a complex four-vector (polarizations, currents).
SpinorMatrix slash(const Eigen::Vector4cd& a, const GammaBasis& g = GammaBasis::dirac());

/// Tr(γ^{μ1} ··· γ^{μn}), or Tr(γ⁵ γ^{μ1} ··· γ^{μn}) when with_gamma5 is set.
/// Evaluated by explicit matrix multiplication.
cplx trace_product(std::span<const int> indices, bool with_gamma5 = false,
                   const GammaBasis& g = GammaBasis::dirac());

/// ψ̄ = ψ†γ⁰
AdjointSpinor dirac_adjoint(const Spinor& psi, const GammaBasis& g = GammaBasis::dirac());
/// M̄ = γ⁰ M† γ⁰
SpinorMatrix dirac_adjoint(const SpinorMatrix& m, const GammaBasis& g = GammaBasis::dirac());
/// Inverse of the spinor adjoint: ψ = (ψ̄ γ⁰)†.
Spinor dirac_adjoint(const AdjointSpinor& psibar, const GammaBasis& g = GammaBasis::dirac());

/// ψ̄₁ γ^λ ψ₂ for λ = 0..3 (contravariant components).
Eigen::Vector4cd vector_bilinear(const Spinor& out, const Spinor& in, const GammaBasis& g = GammaBasis::dirac());

/// A first-degree element of the Clifford algebra, scalar·I + Σ_μ vec[μ] γ^μ.
struct GammaLinear
{
    cplx scalar{0.0, 0.0};
    std::array<cplx, 4> vec{};

    /// γ_μ = g_{μμ} γ^μ
    static GammaLinear gamma_lower(int mu);
    /// scale · slash(p) + shift · I
    static GammaLinear slash(const FourVector& p, double scale = 1.0, double shift = 0.0);
};

/// All traces Tr(γ^{μ1}···γ^{μn}) for even n up to 8, filled once per representation
/// by explicit matrix products, and the multilinear expansion of traces of GammaLinear products.
class TraceTable
{
  public:
    static constexpr int kMaxLength = 8;

    explicit TraceTable(const GammaBasis& g);

    /// Shared table for a representation (built on first use, thread-safe).
    static const TraceTable& of(const GammaBasis& g);

    cplx operator()(std::span<const int> indices) const;

    /// Tr(f₁ f₂ ··· f_n), expanded into index traces.
    cplx trace(std::span<const GammaLinear> factors) const;

  private:
    std::vector<cplx> table_;
    std::array<std::size_t, kMaxLength + 2> offset_{};
};

}  // namespace pdirac
