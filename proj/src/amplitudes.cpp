#include "pdirac/amplitudes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

namespace pdirac
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ConservationDelta mass_delta(const PlaneWave& out, const PlaneWave& in, std::string label)
{
    return {ConservationDelta::Kind::mass, std::move(label),
            FourVector{in.tau_frequency() - out.tau_frequency(), 0.0, 0.0, 0.0}};
}

void require_same_normalization(const PlaneWave& a, const PlaneWave& b)
{
    const auto& na = a.normalization();
    const auto& nb = b.normalization();
    if (na.kind != nb.kind || (na.kind == WaveNormalization::Kind::box && na.edge != nb.edge))
        throw std::invalid_argument("external waves use different normalizations");
}

// (m - slash p)/(2m) and -(m + slash p)/(2m) for p⁰ > 0
GammaLinear u_projector_linear(const OnShellMomentum& p)
{
    return GammaLinear::slash(p.forward(), -0.5 / p.m(), 0.5);
}

GammaLinear v_projector_linear(const OnShellMomentum& p)
{
    return GammaLinear::slash(p.forward(), -0.5 / p.m(), -0.5);
}

GammaLinear line_linear(const FourVector& l, double omega)
{
    const double den = -dot(l, l) - omega * omega;
    if (den == 0.0) throw std::domain_error("internal line on its mass shell");
    return GammaLinear::slash(l, 1.0 / den, -omega / den);
}

GammaLinear gamma_upper(int mu)
{
    GammaLinear f;
    f.vec[static_cast<std::size_t>(mu)] = 1.0;
    return f;
}

Eigen::Vector4cd as_complex(const FourVector& v) { return v.vec().cast<cplx>(); }

}  // namespace

RegScalar normalization_factor(const WaveNormalization& n)
{
    if (n.kind == WaveNormalization::Kind::box) return RegScalar::box_power(n.edge, -2);
    return RegScalar::number(1.0 / (kTwoPi * kTwoPi));
}

bool ConservationDelta::satisfied(double tol) const
{
    if (kind == Kind::mass) return std::abs(mismatch[0]) <= tol;
    for (int mu = 0; mu < 4; ++mu)
        if (std::abs(mismatch[mu]) > tol) return false;
    return true;
}

std::size_t AmplitudeResult::count(ConservationDelta::Kind k) const
{
    std::size_t n = 0;
    for (const auto& d : deltas) n += d.kind == k;
    return n;
}

Eigen::Vector4cd PhotonLeg::vertex_polarization() const
{
    return direction == Direction::outgoing ? Eigen::Vector4cd(polarization.conjugate()) : polarization;
}

FourVector PhotonLeg::inflow() const { return direction == Direction::incoming ? k : -k; }

void PhotonLeg::validate(double tol) const
{
    const double scale = std::max(1.0, k[0] * k[0]);
    cplx ek{0.0, 0.0};
    for (int mu = 0; mu < 4; ++mu) ek += polarization[mu] * k.lower(mu);
    if (std::abs(dot(k, k)) > tol * scale || std::abs(ek) > tol * std::sqrt(scale) || k[0] == 0.0)
        throw std::domain_error("photon leg off the light cone");
}

std::array<FourVector, 2> transverse_polarizations(const FourVector& k)
{
    const double kn = k.spatial_norm();
    if (kn == 0.0 || std::abs(dot(k, k)) > 1e-10 * k[0] * k[0])
        throw std::domain_error("photon leg off the light cone");
    const Eigen::Vector3d n{k[1] / kn, k[2] / kn, k[3] / kn};
    // Seed with the axis least aligned with n.
    Eigen::Vector3d seed = Eigen::Vector3d::Zero();
    Eigen::Index axis = 0;
    n.cwiseAbs().minCoeff(&axis);
    seed[axis] = 1.0;
    const Eigen::Vector3d e1 = (seed - seed.dot(n) * n).normalized();
    const Eigen::Vector3d e2 = n.cross(e1);
    return {FourVector{0.0, e1[0], e1[1], e1[2]}, FourVector{0.0, e2[0], e2[1], e2[2]}};
}

FourVector ExternalPotential::operator()(const FourVector& x) const
{
    if (pointwise_) return pointwise_(x);
    FourVector a;
    if (!modes_) return a;
    for (const auto& m : *modes_)
    {
        const cplx ph = std::exp(kI * dot(m.k, x));
        for (int mu = 0; mu < 4; ++mu) a[mu] += std::real(m.amplitude[mu] * ph);
    }
    return a;
}

Eigen::Vector4cd MollerCurrent::operator()(const FourVector& y) const
{
    return normalization.value * std::exp(kI * dot(momentum, y)) * bilinear;
}

MollerCurrent transition_current(const PlaneWave& out, const PlaneWave& in)
{
    require_same_normalization(out, in);
    MollerCurrent j;
    j.bilinear = vector_bilinear(out.amplitude(), in.amplitude(), in.basis());
    j.momentum = in.phase_momentum() - out.phase_momentum();
    j.normalization = normalization_factor(out.normalization()) * normalization_factor(in.normalization());
    j.mass_delta = mass_delta(out, in, "current mass shell");
    return j;
}

MollerCurrent moller_current(const PlaneWave& out, const PlaneWave& in)
{
    if (in.kind() != WaveKind::particle || out.kind() != WaveKind::antiparticle)
        throw std::invalid_argument("Moller current needs an incident f(+) and an outgoing h(-)");
    return transition_current(out, in);
}

PotentialMode potential_from_current(const MollerCurrent& j, double charge, double varpi)
{
    const ComplexTensor2 d = boson_influence(j.momentum, varpi);
    Eigen::Vector4cd lower;
    for (int nu = 0; nu < 4; ++nu) lower[nu] = metric(nu, nu) * j.bilinear[nu];
    PotentialMode mode;
    mode.amplitude = charge * (d * lower);
    mode.k = j.momentum;
    mode.normalization = j.normalization;
    mode.deltas = {j.mass_delta};
    return mode;
}

AmplitudeResult first_order_amplitude(const PlaneWave& final_wave, const PlaneWave& initial_wave,
                                      const ExternalPotential& potential, double charge)
{
    require_same_normalization(final_wave, initial_wave);
    const auto& modes = potential.modes();
    if (!modes) throw std::invalid_argument("supply Fourier mode");
    if (modes->size() > 1) throw std::invalid_argument("first-order amplitude takes a single Fourier mode");

    const GammaBasis& g = initial_wave.basis();
    AmplitudeResult r;
    r.leading_sign = final_wave.branch();
    r.normalization = normalization_factor(final_wave.normalization()) * normalization_factor(initial_wave.normalization());

    PotentialMode mode;
    if (!modes->empty()) mode = modes->front();
    r.normalization *= mode.normalization;
    r.deltas = mode.deltas;

    const AdjointSpinor bar = dirac_adjoint(final_wave.amplitude(), g);
    const cplx m = bar * slash(mode.amplitude, g) * initial_wave.amplitude();
    r.reduced = static_cast<double>(r.leading_sign) * kI * charge * m;

    r.deltas.push_back({ConservationDelta::Kind::energy_momentum, "vertex four-momentum",
                        initial_wave.phase_momentum() + mode.k - final_wave.phase_momentum()});
    r.deltas.push_back(mass_delta(final_wave, initial_wave, "vertex mass shell"));
    return r;
}

SpinorMatrix internal_line(const FourVector& l, double omega, const GammaBasis& g)
{
    const double den = -dot(l, l) - omega * omega;
    if (den == 0.0) throw std::domain_error("internal line on its mass shell");
    return (slash(l, g) - omega * SpinorMatrix::Identity()) / den;
}

AmplitudeResult second_order_amplitude(const PlaneWave& final_wave, const PhotonLeg& a, const PhotonLeg& b,
                                       const PlaneWave& initial_wave, double charge, bool include_crossed)
{
    require_same_normalization(final_wave, initial_wave);
    a.validate();
    b.validate();
    const GammaBasis& g = initial_wave.basis();
    const double omega = initial_wave.tau_frequency();
    const FourVector ki = initial_wave.phase_momentum();

    const SpinorMatrix ea = slash(a.vertex_polarization(), g);
    const SpinorMatrix eb = slash(b.vertex_polarization(), g);
    SpinorMatrix chain = ea * internal_line(ki + b.inflow(), omega, g) * eb;
    if (include_crossed) chain += eb * internal_line(ki + a.inflow(), omega, g) * ea;

    AmplitudeResult r;
    r.leading_sign = final_wave.branch();
    r.normalization = normalization_factor(final_wave.normalization()) * normalization_factor(initial_wave.normalization());
    const cplx m = dirac_adjoint(final_wave.amplitude(), g) * chain * initial_wave.amplitude();
    r.reduced = static_cast<double>(r.leading_sign) * (-kI * charge * charge) * m;
    r.deltas.push_back({ConservationDelta::Kind::energy_momentum, "four-momentum",
                        ki + a.inflow() + b.inflow() - final_wave.phase_momentum()});
    r.deltas.push_back(mass_delta(final_wave, initial_wave, "mass shell"));
    return r;
}

void ProcessSpec::validate() const
{
    if (incident.empty() || final.empty()) throw std::invalid_argument("process needs incident and final waves");
    for (const auto& p : photons) p.validate();
}

AmplitudeResult pair_annihilation_amplitude(const ProcessSpec& spec, double charge, bool include_crossed)
{
    spec.validate();
    if (spec.incident.size() != 1 || spec.final.size() != 1 || spec.photons.size() != 2)
        throw std::invalid_argument("pair annihilation takes one fermion in, one out and two photons");
    if (spec.incident[0].kind() != WaveKind::particle || spec.final[0].kind() != WaveKind::antiparticle)
        throw std::invalid_argument("pair annihilation needs f(+) in and h(-) out");
    return second_order_amplitude(spec.final[0], spec.photons[0], spec.photons[1], spec.incident[0], charge,
                                  include_crossed);
}

AmplitudeResult compton_amplitude(const ProcessSpec& spec, double charge, bool include_crossed)
{
    spec.validate();
    if (spec.incident.size() != 1 || spec.final.size() != 1 || spec.photons.size() != 2)
        throw std::invalid_argument("Compton scattering takes one fermion in, one out and two photons");
    if (spec.incident[0].kind() != WaveKind::particle || spec.final[0].kind() != WaveKind::particle)
        throw std::invalid_argument("Compton scattering needs f(+) in and out");
    return second_order_amplitude(spec.final[0], spec.photons[0], spec.photons[1], spec.incident[0], charge,
                                  include_crossed);
}

AmplitudeResult muon_pair_amplitude(const PlaneWave& electron, const PlaneWave& positron, const PlaneWave& muon,
                                    const PlaneWave& antimuon, double charge, CurrentSource source)
{
    if (muon.kind() != WaveKind::particle || antimuon.kind() != WaveKind::antiparticle)
        throw std::invalid_argument("muon pair needs f(+) muon and h(-) antimuon");
    if (source == CurrentSource::electron_pair)
    {
        const ExternalPotential a{potential_from_current(moller_current(positron, electron), charge)};
        return first_order_amplitude(muon, antimuon, a, charge);
    }
    const ExternalPotential a{potential_from_current(transition_current(muon, antimuon), charge)};
    return first_order_amplitude(positron, electron, a, charge);
}

double muon_pair_spin_sum(const OnShellMomentum& p1, const OnShellMomentum& p2, const OnShellMomentum& p3,
                          const OnShellMomentum& p4, double charge, const GammaBasis& g)
{
    double sum = 0.0;
    for (int s1 = 1; s1 <= 2; ++s1)
        for (int s2 = 1; s2 <= 2; ++s2)
        {
            const PlaneWave e = PlaneWave::particle(p1, s1, {}, g);
            const PlaneWave eb = antiparticle_wave(p2, s2, {}, g);
            for (int s3 = 1; s3 <= 2; ++s3)
                for (int s4 = 1; s4 <= 2; ++s4)
                {
                    const auto r = muon_pair_amplitude(e, eb, PlaneWave::particle(p3, s3, {}, g),
                                                       antiparticle_wave(p4, s4, {}, g), charge);
                    sum += std::norm(r.reduced);
                }
        }
    return sum;
}

double muon_pair_trace_sum(const OnShellMomentum& p1, const OnShellMomentum& p2, const OnShellMomentum& p3,
                           const OnShellMomentum& p4, double charge, const GammaBasis& g)
{
    const TraceTable& tr = TraceTable::of(g);
    const FourVector k = p1.p() + p2.p();
    const double kk = dot(k, k);
    if (kk == 0.0) throw std::domain_error("pole; supply contour offset");

    const GammaLinear u1 = u_projector_linear(p1), v2 = v_projector_linear(p2);
    const GammaLinear u3 = u_projector_linear(p3), v4 = v_projector_linear(p4);
    double sum = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int sigma = 0; sigma < 4; ++sigma)
        {
            const std::array<GammaLinear, 4> muon{gamma_upper(mu), v4, gamma_upper(sigma), u3};
            const std::array<GammaLinear, 4> electron{gamma_upper(mu), u1, gamma_upper(sigma), v2};
            sum += metric(mu, mu) * metric(sigma, sigma) * std::real(tr.trace(muon) * tr.trace(electron));
        }
    return std::pow(charge, 4) * sum / (kk * kk);
}

double compton_spin_sum(const OnShellMomentum& p, const FourVector& k, const OnShellMomentum& p_out,
                        const FourVector& k_out, double charge, const GammaBasis& g)
{
    const auto eps_in = transverse_polarizations(k);
    const auto eps_out = transverse_polarizations(k_out);
    double sum = 0.0;
    for (int s = 1; s <= 2; ++s)
        for (int s_out = 1; s_out <= 2; ++s_out)
            for (const auto& ei : eps_in)
                for (const auto& eo : eps_out)
                {
                    ProcessSpec spec;
                    spec.incident.push_back(PlaneWave::particle(p, s, {}, g));
                    spec.final.push_back(PlaneWave::particle(p_out, s_out, {}, g));
                    spec.photons.push_back({as_complex(eo), k_out, PhotonLeg::Direction::outgoing});
                    spec.photons.push_back({as_complex(ei), k, PhotonLeg::Direction::incoming});
                    sum += std::norm(compton_amplitude(spec, charge).reduced);
                }
    return sum;
}

double compton_trace_sum(const OnShellMomentum& p, const FourVector& k, const OnShellMomentum& p_out,
                         const FourVector& k_out, double charge, const GammaBasis& g)
{
    const TraceTable& tr = TraceTable::of(g);
    const double omega = p.m();
    const GammaLinear direct = line_linear(p.p() + k, omega);
    const GammaLinear crossed = line_linear(p.p() - k_out, omega);
    const GammaLinear pin = u_projector_linear(p), pout = u_projector_linear(p_out);

    // O_ab = γ_a P₁ γ_b + γ_b P₂ γ_a, and its adjoint swaps the outer gammas of each term.
    double sum = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
        {
            const GammaLinear ga = GammaLinear::gamma_lower(a), gb = GammaLinear::gamma_lower(b);
            const std::array<std::array<GammaLinear, 3>, 2> o{{{ga, direct, gb}, {gb, crossed, ga}}};
            const std::array<std::array<GammaLinear, 3>, 2> obar{{{gb, direct, ga}, {ga, crossed, gb}}};
            cplx t{0.0, 0.0};
            for (const auto& l : o)
                for (const auto& r : obar)
                {
                    const std::array<GammaLinear, 8> f{l[0], l[1], l[2], pin, r[0], r[1], r[2], pout};
                    t += tr.trace(f);
                }
            sum += metric(a, a) * metric(b, b) * std::real(t);
        }
    return std::pow(charge, 4) * sum;
}

Spinor VirtualVertexExpansion::recompose(const FourVector& x, double tau) const
{
    return propagate(forward, backward, trivial_vertex, Event{x, tau}, rho, lattice);
}

VirtualVertexExpansion virtual_vertex_expand(const PlaneWave& wave, double rho, const MomentumGrid& grid,
                                             const SpaceTimeLattice& lattice)
{
    VirtualVertexExpansion e;
    e.trivial_vertex = as_field(wave);
    e.forward = FermionKernelSpec{grid, KernelDirection::forward, &wave.basis()};
    e.backward = FermionKernelSpec{grid, KernelDirection::backward, &wave.basis()};
    e.lattice = lattice;
    e.rho = rho;
    return e;
}

DiagramCount expand_muon_pair_vertices()
{
    struct Leg
    {
        bool fermion;
        bool on_shell;
    };
    struct Vertex
    {
        bool physical;
        std::vector<Leg> legs;
    };

    // Ansatz: each physical vertex joins one incident and one final physical fermion to the boson.
    std::vector<Vertex> vertices{
        {true, {{true, true}, {true, true}, {false, false}}},
        {true, {{true, true}, {true, true}, {false, false}}},
    };

    // A trivial vertex takes over the incident physical leg; the kernel's two virtual wavefunctions
    // end one on the trivial vertex and one on the physical vertex.
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        vertices[i].legs[0] = {true, false};
        vertices.push_back({false, {{true, true}, {true, false}}});
    }

    DiagramCount c;
    c.every_vertex_mixed = true;
    for (const auto& v : vertices)
    {
        (v.physical ? c.physical_vertices : c.trivial_vertices) += 1;
        int on = 0, off = 0;
        for (const auto& l : v.legs)
        {
            if (!l.fermion) continue;
            (l.on_shell ? on : off) += 1;
        }
        c.physical_fermion_legs += on;
        c.virtual_fermion_legs += off;
        c.every_vertex_mixed = c.every_vertex_mixed && on == 1 && off == 1;
    }
    return c;
}

cplx windowed_mass_delta(double mismatch, double half_window)
{
    if (mismatch == 0.0) return 2.0 * half_window / kTwoPi;
    return 2.0 * std::sin(mismatch * half_window) / mismatch / kTwoPi;
}

}  // namespace pdirac
