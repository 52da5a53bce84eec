#include "pdirac/clifford.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace pdirac
{
namespace
{

using Pauli = Eigen::Matrix2cd;

std::array<Pauli, 3> pauli()
{
    Pauli s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, -kI, kI, 0;
    s3 << 1, 0, 0, -1;
    return {s1, s2, s3};
}

SpinorMatrix blocks(const Pauli& a, const Pauli& b, const Pauli& c, const Pauli& d)
{
    SpinorMatrix m;
    m << a, b, c, d;
    return m;
}

SpinorMatrix make_gamma5(const std::array<SpinorMatrix, 4>& g)
{
    return kI * g[0] * g[1] * g[2] * g[3];
}

GammaBasis make_dirac()
{
    const auto s = pauli();
    const Pauli id = Pauli::Identity();
    const Pauli zero = Pauli::Zero();

    GammaBasis b;
    b.name = "dirac";
    b.gamma[0] = blocks(id, zero, zero, -id);
    for (int j = 0; j < 3; ++j) b.gamma[static_cast<std::size_t>(j + 1)] = blocks(zero, s[j], -s[j], zero);
    b.gamma5 = make_gamma5(b.gamma);
    b.rest_frame = SpinorMatrix::Identity();
    return b;
}

GammaBasis make_weyl()
{
    const auto s = pauli();
    const Pauli id = Pauli::Identity();
    const Pauli zero = Pauli::Zero();

    GammaBasis b;
    b.name = "weyl";
    b.gamma[0] = blocks(zero, id, id, zero);
    for (int j = 0; j < 3; ++j) b.gamma[static_cast<std::size_t>(j + 1)] = blocks(zero, s[j], -s[j], zero);
    b.gamma5 = make_gamma5(b.gamma);
    // Unitary map from Dirac-Pauli: γ_weyl = U γ_dirac U†, so rest spinors are the columns of U.
    const double r = 1.0 / std::sqrt(2.0);
    b.rest_frame = blocks(r * id, -r * id, r * id, r * id);
    return b;
}

}  // namespace

const GammaBasis& GammaBasis::dirac()
{
    static const GammaBasis basis = make_dirac();
    return basis;
}

const GammaBasis& GammaBasis::weyl()
{
    static const GammaBasis basis = make_weyl();
    return basis;
}

double GammaBasis::anticommutator_defect() const
{
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu; nu < 4; ++nu)
        {
            const SpinorMatrix ac = (*this)[mu] * (*this)[nu] + (*this)[nu] * (*this)[mu];
            const SpinorMatrix expect = -2.0 * metric(mu, nu) * SpinorMatrix::Identity();
            worst = std::max(worst, (ac - expect).cwiseAbs().maxCoeff());
        }
    return worst;
}

SpinorMatrix slash(const FourVector& p, const GammaBasis& g)
{
    SpinorMatrix m = SpinorMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) m += p.lower(mu) * g[mu];
    return m;
}

SpinorMatrix slash(const Eigen::Vector4cd& a, const GammaBasis& g)
{
    SpinorMatrix m = SpinorMatrix::Zero();
    for (int mu = 0; mu < 4; ++mu) m += (metric(mu, mu) * a[mu]) * g[mu];
    return m;
}

cplx trace_product(std::span<const int> indices, bool with_gamma5, const GammaBasis& g)
{
    SpinorMatrix m = with_gamma5 ? g.gamma5 : SpinorMatrix::Identity();
    for (int mu : indices)
    {
        if (mu < 0 || mu > 3) throw std::out_of_range("Lorentz index out of range");
        m = m * g[mu];
    }
    return m.trace();
}

AdjointSpinor dirac_adjoint(const Spinor& psi, const GammaBasis& g) { return psi.adjoint() * g[0]; }

SpinorMatrix dirac_adjoint(const SpinorMatrix& m, const GammaBasis& g) { return g[0] * m.adjoint() * g[0]; }

Spinor dirac_adjoint(const AdjointSpinor& psibar, const GammaBasis& g)
{
    return (psibar * g[0]).adjoint();
}

Eigen::Vector4cd vector_bilinear(const Spinor& out, const Spinor& in, const GammaBasis& g)
{
    const AdjointSpinor bar = dirac_adjoint(out, g);
    Eigen::Vector4cd j;
    for (int mu = 0; mu < 4; ++mu) j[mu] = bar * g[mu] * in;
    return j;
}

}  // namespace pdirac

namespace pdirac
{

GammaLinear GammaLinear::gamma_lower(int mu)
{
    GammaLinear f;
    f.vec[static_cast<std::size_t>(mu)] = metric(mu, mu);
    return f;
}

GammaLinear GammaLinear::slash(const FourVector& p, double scale, double shift)
{
    GammaLinear f;
    f.scalar = shift;
    for (int mu = 0; mu < 4; ++mu) f.vec[static_cast<std::size_t>(mu)] = scale * p.lower(mu);
    return f;
}

TraceTable::TraceTable(const GammaBasis& g)
{
    std::size_t total = 0;
    for (int n = 0; n <= kMaxLength; ++n)
    {
        offset_[static_cast<std::size_t>(n)] = total;
        total += std::size_t{1} << (2 * n);
    }
    offset_[kMaxLength + 1] = total;
    table_.assign(total, cplx{0.0, 0.0});

    // Depth-first over index strings, reusing prefix products.
    std::array<SpinorMatrix, kMaxLength + 1> prefix;
    prefix[0] = SpinorMatrix::Identity();
    auto visit = [&](auto&& self, int depth, std::size_t code) -> void {
        if (depth % 2 == 0) table_[offset_[static_cast<std::size_t>(depth)] + code] = prefix[static_cast<std::size_t>(depth)].trace();
        if (depth == kMaxLength) return;
        for (int mu = 0; mu < 4; ++mu)
        {
            prefix[static_cast<std::size_t>(depth + 1)] = prefix[static_cast<std::size_t>(depth)] * g[mu];
            self(self, depth + 1, code * 4 + static_cast<std::size_t>(mu));
        }
    };
    visit(visit, 0, 0);
}

const TraceTable& TraceTable::of(const GammaBasis& g)
{
    static std::mutex lock;
    static std::map<const GammaBasis*, std::unique_ptr<TraceTable>> cache;
    std::lock_guard guard{lock};
    auto& slot = cache[&g];
    if (!slot) slot = std::make_unique<TraceTable>(g);
    return *slot;
}

cplx TraceTable::operator()(std::span<const int> indices) const
{
    const auto n = indices.size();
    if (n > kMaxLength) throw std::out_of_range("trace table holds at most 8 gammas");
    if (n % 2 == 1) return {0.0, 0.0};
    std::size_t code = 0;
    for (int mu : indices) code = code * 4 + static_cast<std::size_t>(mu);
    return table_[offset_[n] + code];
}

cplx TraceTable::trace(std::span<const GammaLinear> factors) const
{
    // Nonzero terms of each factor: index -1 for the scalar part.
    struct Term
    {
        int mu;
        cplx c;
    };
    std::vector<std::array<Term, 5>> terms(factors.size());
    std::vector<int> counts(factors.size(), 0);
    for (std::size_t i = 0; i < factors.size(); ++i)
    {
        auto& n = counts[i];
        if (factors[i].scalar != cplx{0.0, 0.0}) terms[i][static_cast<std::size_t>(n++)] = {-1, factors[i].scalar};
        for (int mu = 0; mu < 4; ++mu)
            if (factors[i].vec[static_cast<std::size_t>(mu)] != cplx{0.0, 0.0})
                terms[i][static_cast<std::size_t>(n++)] = {mu, factors[i].vec[static_cast<std::size_t>(mu)]};
    }

    auto expand = [&](auto&& self, std::size_t i, int len, std::size_t code, cplx coeff) -> cplx {
        if (i == factors.size())
            return len % 2 == 1 ? cplx{0.0, 0.0} : coeff * table_[offset_[static_cast<std::size_t>(len)] + code];
        cplx acc{0.0, 0.0};
        for (int t = 0; t < counts[i]; ++t)
        {
            const Term& term = terms[i][static_cast<std::size_t>(t)];
            if (term.mu < 0)
                acc += self(self, i + 1, len, code, coeff * term.c);
            else
            {
                if (len == kMaxLength) throw std::out_of_range("trace table holds at most 8 gammas");
                acc += self(self, i + 1, len + 1, code * 4 + static_cast<std::size_t>(term.mu), coeff * term.c);
            }
        }
        return acc;
    };
    return expand(expand, 0, 0, 0, cplx{1.0, 0.0});
}

}  // namespace pdirac
