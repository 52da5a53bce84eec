#include "pdirac/evolution.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/tools/toms748_solve.hpp>
#include <fftw3.h>

namespace pdirac
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int signed_frequency(int i, int n) { return i <= (n - 1) / 2 ? i : i - n; }

bool is_nyquist(int i, int n) { return n % 2 == 0 && i == n / 2; }

// Lattice index of an integer wavenumber, or -1 if it is not representable.
int lattice_index(double k, double period, int n)
{
    const double v = k * period / kTwoPi;
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v))) return -1;
    const int f = static_cast<int>(r);
    const int i = ((f % n) + n) % n;
    return signed_frequency(i, n) == f ? i : -1;
}

class Transform
{
  public:
    Transform(int n_t, int n_z, int sign)
        : n_(static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_z)),
          buf_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_)))
    {
        plan_ = fftw_plan_dft_2d(n_t, n_z, buf_, buf_, sign, FFTW_ESTIMATE);
    }
    ~Transform()
    {
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    std::complex<double>* data() { return reinterpret_cast<std::complex<double>*>(buf_); }
    void run() { fftw_execute(plan_); }

  private:
    std::size_t n_;
    fftw_complex* buf_;
    fftw_plan plan_;
};

}  // namespace

SpinorMatrix mode_propagator(const FourVector& k, double dtau, const GammaBasis& g)
{
    const SpinorMatrix s = slash(k, g);
    const SpinorMatrix id = SpinorMatrix::Identity();
    const double kk = dot(k, k);
    const double scale = k[0] * k[0] + k.spatial_norm() * k.spatial_norm();
    if (std::abs(kk) <= 1e-14 * scale) return id - kI * dtau * s;
    if (kk < 0.0)
    {
        const double m = std::sqrt(-kk);
        return std::cos(m * dtau) * id - kI * (std::sin(m * dtau) / m) * s;
    }
    const double kappa = std::sqrt(kk);
    return std::cosh(kappa * dtau) * id - kI * (std::sinh(kappa * dtau) / kappa) * s;
}

SpectralField::SpectralField(int n_t, int n_z, double period_t, double period_z, const GammaBasis& g)
    : n_t_(n_t), n_z_(n_z), period_t_(period_t), period_z_(period_z), g_(&g)
{
    if (n_t < 1 || n_z < 1 || !(period_t > 0.0) || !(period_z > 0.0))
        throw std::invalid_argument("spectral lattice needs positive sizes and periods");
    c_.assign(static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_z), Spinor::Zero());
}

std::size_t SpectralField::index(int i_t, int i_z) const
{
    return static_cast<std::size_t>(i_t) * static_cast<std::size_t>(n_z_) + static_cast<std::size_t>(i_z);
}

FourVector SpectralField::mode_momentum(int i_t, int i_z) const
{
    return {kTwoPi * signed_frequency(i_t, n_t_) / period_t_, 0.0, 0.0, kTwoPi * signed_frequency(i_z, n_z_) / period_z_};
}

void SpectralField::add_wave(const PlaneWave& w)
{
    const FourVector k = w.phase_momentum();
    if (k[1] != 0.0 || k[2] != 0.0) throw std::invalid_argument("wave has transverse momentum");
    const int it = lattice_index(k[0], period_t_, n_t_);
    const int iz = lattice_index(k[3], period_z_, n_z_);
    if (it < 0 || iz < 0) throw std::invalid_argument("wave momentum not on the lattice");
    coeff(it, iz) += (w.normalization().factor() * std::exp(kI * w.tau_frequency() * tau_)) * w.amplitude();
}

std::vector<Spinor> SpectralField::to_samples() const
{
    std::vector<Spinor> out(c_.size(), Spinor::Zero());
    Transform fft(n_t_, n_z_, FFTW_BACKWARD);
    for (int comp = 0; comp < 4; ++comp)
    {
        // The t-direction carries e^{-ik⁰t}: reflect its index so a single backward transform applies.
        for (int j = 0; j < n_t_; ++j)
            for (int b = 0; b < n_z_; ++b) fft.data()[index(j, b)] = coeff((n_t_ - j) % n_t_, b)[comp];
        fft.run();
        for (std::size_t i = 0; i < out.size(); ++i) out[i][comp] = fft.data()[i];
    }
    return out;
}

void SpectralField::from_samples(const std::vector<Spinor>& samples)
{
    if (samples.size() != c_.size()) throw std::invalid_argument("sample count does not match the lattice");
    Transform fft(n_t_, n_z_, FFTW_FORWARD);
    const double inv_n = 1.0 / static_cast<double>(c_.size());
    for (int comp = 0; comp < 4; ++comp)
    {
        for (std::size_t i = 0; i < samples.size(); ++i) fft.data()[i] = samples[i][comp];
        fft.run();
        for (int j = 0; j < n_t_; ++j)
            for (int b = 0; b < n_z_; ++b) coeff((n_t_ - j) % n_t_, b)[comp] = inv_n * fft.data()[index(j, b)];
    }
}

Spinor SpectralField::evaluate(double t, double z) const
{
    Spinor psi = Spinor::Zero();
    for (int a = 0; a < n_t_; ++a)
        for (int b = 0; b < n_z_; ++b)
        {
            const FourVector k = mode_momentum(a, b);
            psi += std::exp(kI * (-k[0] * t + k[3] * z)) * coeff(a, b);
        }
    return psi;
}

double SpectralField::branch_norm() const
{
    double sum = 0.0;
    for (int a = 0; a < n_t_; ++a)
        for (int b = 0; b < n_z_; ++b)
        {
            const Spinor& c = coeff(a, b);
            const FourVector k = mode_momentum(a, b);
            if (dot(k, k) >= 0.0) continue;
            const SpinorBlock blk = build_basis(k, *g_);
            for (int s = 1; s <= 2; ++s)
                sum += std::norm((dirac_adjoint(blk.u_col(s), *g_) * c).value()) + std::norm((dirac_adjoint(blk.v_col(s), *g_) * c).value());
        }
    return sum;
}

cplx SpectralField::dirac_sum() const
{
    cplx sum{0.0, 0.0};
    for (const auto& c : c_) sum += (dirac_adjoint(c, *g_) * c).value();
    return sum;
}

double SpectralField::plain_norm() const
{
    double sum = 0.0;
    for (const auto& c : c_) sum += c.squaredNorm();
    return sum;
}

int SpectralField::spacelike_modes() const
{
    int n = 0;
    for (int a = 0; a < n_t_; ++a)
        for (int b = 0; b < n_z_; ++b)
        {
            const FourVector k = mode_momentum(a, b);
            n += dot(k, k) >= 0.0 && coeff(a, b).squaredNorm() > 0.0;
        }
    return n;
}

SpectralField& SpectralField::operator+=(const SpectralField& o)
{
    if (o.n_t_ != n_t_ || o.n_z_ != n_z_ || o.period_t_ != period_t_ || o.period_z_ != period_z_)
        throw std::invalid_argument("spectral fields live on different lattices");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx s)
{
    for (auto& c : c_) c *= s;
    return *this;
}

SpectralField evolve_free(const SpectralField& field, double dtau)
{
    SpectralField out = field;
    for (int a = 0; a < field.n_t(); ++a)
        for (int b = 0; b < field.n_z(); ++b)
            out.coeff(a, b) = mode_propagator(field.mode_momentum(a, b), dtau, field.basis()) * field.coeff(a, b);
    out.set_tau(field.tau() + dtau);
    return out;
}

SpectralField tpc_conjugate(const SpectralField& field)
{
    SpectralField out = field;
    const SpinorMatrix m = -kI * field.basis().gamma5;
    for (int a = 0; a < field.n_t(); ++a)
        for (int b = 0; b < field.n_z(); ++b)
        {
            if ((is_nyquist(a, field.n_t()) || is_nyquist(b, field.n_z())) && field.coeff(a, b).squaredNorm() > 0.0)
                throw std::domain_error("Nyquist mode has no reflected partner");
            out.coeff((field.n_t() - a) % field.n_t(), (field.n_z() - b) % field.n_z()) = m * field.coeff(a, b);
        }
    return out;
}

double phase_velocity_probe(const OnShellMomentum& p, int branch, const GammaBasis& g)
{
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    if (p.phi() < 0) throw std::invalid_argument("probe momentum needs p0 > 0");
    if (p.p()[1] != 0.0 || p.p()[2] != 0.0) throw std::invalid_argument("probe momentum must lie along z");

    const double E = p.energy();
    const double pz = p.p()[3];
    const bool moving = pz != 0.0;
    SpectralField field(3, moving ? 3 : 1, kTwoPi / E, moving ? kTwoPi / std::abs(pz) : 1.0, g);
    const PlaneWave w = branch > 0 ? PlaneWave::particle(p, 1, {}, g) : PlaneWave::negative(p, 1, {}, g);
    field.add_wave(w);

    const double dtau = 0.5 / p.m();
    const SpectralField later = evolve_free(field, dtau);

    int comp = 0;
    w.amplitude().cwiseAbs().maxCoeff(&comp);
    const cplx ref = field.evaluate(0.0, 0.0)[comp];
    auto phase_gap = [&](double t) { return std::arg(later.evaluate(t, 0.0)[comp] / ref); };

    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(phase_gap, -1.5 / E, 1.5 / E,
                                                            boost::math::tools::eps_tolerance<double>(52), iters);
    return 0.5 * (lo + hi) / dtau;
}

void write_snapshot_csv(std::ostream& os, const SpectralField& field)
{
    os << "tau,t,z,density\n";
    const auto samples = field.to_samples();
    char buf[128];
    for (int a = 0; a < field.n_t(); ++a)
        for (int b = 0; b < field.n_z(); ++b)
        {
            const double t = field.period_t() * a / field.n_t();
            const double z = field.period_z() * b / field.n_z();
            const double rho = samples[static_cast<std::size_t>(a) * static_cast<std::size_t>(field.n_z()) + static_cast<std::size_t>(b)].squaredNorm();
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", field.tau(), t, z, rho);
            os << buf;
        }
}

}  // namespace pdirac
