#include "pdirac/twoparticle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdirac
{

TwoSpinor kron(const Spinor& a, const Spinor& b)
{
    TwoSpinor r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i * 4 + j] = a[i] * b[j];
    return r;
}

TwoSpinorMatrix kron(const SpinorMatrix& a, const SpinorMatrix& b)
{
    TwoSpinorMatrix r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.block<4, 4>(i * 4, j * 4) = a(i, j) * b;
    return r;
}

TwoSpinor swap_slots(const TwoSpinor& psi)
{
    TwoSpinor r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[i * 4 + j] = psi[j * 4 + i];
    return r;
}

TwoParticleState::TwoParticleState(std::vector<Product> terms, Construction tag) : terms_(std::move(terms)), tag_(tag)
{
    for (const auto& t : terms_)
        if (!t.first || !t.second) throw std::invalid_argument("empty single-particle evaluator");
}

TwoParticleState TwoParticleState::separable(SpinorField psi, SpinorField xi)
{
    return TwoParticleState{{{1.0, std::move(psi), std::move(xi)}}, Construction::separable};
}

TwoSpinor TwoParticleState::operator()(const FourVector& x, const FourVector& y, double tau) const
{
    TwoSpinor r = TwoSpinor::Zero();
    for (const auto& t : terms_) r += t.coefficient * kron(t.first(x, tau), t.second(y, tau));
    return r;
}

TwoParticleState build_entangled(SpinorField psi, SpinorField xi, int sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("entanglement sign must be +1 or -1");
    std::vector<TwoParticleState::Product> terms{{1.0, psi, xi}, {static_cast<double>(sign), xi, psi}};
    return TwoParticleState{std::move(terms), sign < 0 ? Construction::antisymmetric : Construction::symmetric};
}

TwoSpinor two_particle_residual(const TwoParticleState& state, const FourVector& x, const FourVector& y, double tau,
                                const Potential& potential, double charge_x, double charge_y, double h,
                                const GammaBasis& g)
{
    const cplx inv_i = -kI;
    const SpinorMatrix id = SpinorMatrix::Identity();
    TwoSpinor r = inv_i * (state(x, y, tau + h) - state(x, y, tau - h)) / (2.0 * h);
    for (int mu = 0; mu < 4; ++mu)
    {
        FourVector xu = x, xd = x, yu = y, yd = y;
        xu[mu] += h;
        xd[mu] -= h;
        yu[mu] += h;
        yd[mu] -= h;
        const TwoSpinor dx = (state(xu, y, tau) - state(xd, y, tau)) / (2.0 * h);
        const TwoSpinor dy = (state(x, yu, tau) - state(x, yd, tau)) / (2.0 * h);
        r += inv_i * (kron(g[mu], id) * dx + kron(id, g[mu]) * dy);
    }
    if (potential)
    {
        const TwoSpinor psi = state(x, y, tau);
        if (charge_x != 0.0) r -= charge_x * (kron(slash(potential(x), g), id) * psi);
        if (charge_y != 0.0) r -= charge_y * (kron(id, slash(potential(y), g)) * psi);
    }
    return r;
}

Eigen::Vector4d two_particle_current(const TwoSpinor& psi, const GammaBasis& g)
{
    const SpinorMatrix id = SpinorMatrix::Identity();
    const Eigen::Matrix<cplx, 1, 16> bar = psi.adjoint() * kron(g[0], g[0]);
    Eigen::Vector4d j;
    for (int mu = 0; mu < 4; ++mu) j[mu] = std::real((bar * (kron(g[mu], id) + kron(id, g[mu])) * psi).value());
    return j;
}

CurrentGrid CurrentGrid::relative_phase_period(const PlaneWave& psi, const PlaneWave& xi, int points)
{
    CurrentGrid grid;
    grid.points = points;
    const FourVector dk = psi.phase_momentum() - xi.phase_momentum();
    for (int mu = 0; mu < 4; ++mu)
    {
        const double k = std::abs(dk[mu]);
        grid.extent[static_cast<std::size_t>(mu)] = k > 1e-12 ? 2.0 * std::numbers::pi / k : 1.0;
    }
    return grid;
}

CurrentReport current_report(const TwoParticleState& state, const CurrentGrid& grid, const GammaBasis& g)
{
    if (grid.points < 1) throw std::invalid_argument("current grid needs at least one point per axis");
    CurrentReport rep;
    const int n = grid.points;
    double sum = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                {
                    const std::array<int, 4> idx{a, b, c, d};
                    FourVector sep;
                    for (int mu = 0; mu < 4; ++mu)
                        sep[mu] = grid.extent[static_cast<std::size_t>(mu)] * idx[static_cast<std::size_t>(mu)] / n;
                    const FourVector x = grid.origin + grid.translation;
                    const FourVector y = x - sep;

                    const Eigen::Vector4d total = two_particle_current(state(x, y, grid.tau), g);
                    Eigen::Vector4d parts = Eigen::Vector4d::Zero();
                    for (const auto& t : state.terms())
                        parts += t.coefficient * t.coefficient *
                                 two_particle_current(kron(t.first(x, grid.tau), t.second(y, grid.tau)), g);
                    const Eigen::Vector4d inter = total - parts;

                    rep.x.push_back(x);
                    rep.y.push_back(y);
                    rep.total.push_back(total);
                    rep.parts.push_back(parts);
                    rep.interference.push_back(inter);
                    sum += inter.squaredNorm();
                }
    rep.nonadditivity_norm = std::sqrt(sum / static_cast<double>(rep.total.size()));
    return rep;
}

}  // namespace pdirac
