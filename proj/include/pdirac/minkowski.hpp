#pragma once

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Core>

namespace pdirac
{

/// Minkowski metric g = diag(-1, +1, +1, +1).
inline constexpr std::array<double, 4> kMetric{-1.0, 1.0, 1.0, 1.0};

inline constexpr double metric(int mu, int nu) noexcept
{
    return mu == nu ? kMetric[static_cast<std::size_t>(mu)] : 0.0;
}

/// Contravariant real four-vector (x^0, x^1, x^2, x^3) in natural units.
struct FourVector
{
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

    constexpr FourVector() = default;
    constexpr FourVector(double x0, double x1, double x2, double x3) : c{x0, x1, x2, x3} {}

    constexpr double operator[](int mu) const noexcept { return c[static_cast<std::size_t>(mu)]; }
    constexpr double& operator[](int mu) noexcept { return c[static_cast<std::size_t>(mu)]; }

    /// Covariant component x_mu = g_{mu nu} x^nu.
    constexpr double lower(int mu) const noexcept { return metric(mu, mu) * (*this)[mu]; }

    double spatial_norm() const noexcept;

    Eigen::Vector4d vec() const { return {c[0], c[1], c[2], c[3]}; }
    static FourVector from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

    constexpr FourVector& operator+=(const FourVector& o) noexcept
    {
        for (int mu = 0; mu < 4; ++mu) (*this)[mu] += o[mu];
        return *this;
    }
    constexpr FourVector& operator-=(const FourVector& o) noexcept
    {
        for (int mu = 0; mu < 4; ++mu) (*this)[mu] -= o[mu];
        return *this;
    }
    constexpr FourVector& operator*=(double s) noexcept
    {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend constexpr FourVector operator+(FourVector a, const FourVector& b) noexcept { return a += b; }
    friend constexpr FourVector operator-(FourVector a, const FourVector& b) noexcept { return a -= b; }
    friend constexpr FourVector operator-(FourVector a) noexcept { return a *= -1.0; }
    friend constexpr FourVector operator*(double s, FourVector a) noexcept { return a *= s; }
    friend constexpr FourVector operator*(FourVector a, double s) noexcept { return a *= s; }
    friend constexpr bool operator==(const FourVector&, const FourVector&) = default;
};

/// a·b = -a⁰b⁰ + a¹b¹ + a²b² + a³b³
constexpr double dot(const FourVector& a, const FourVector& b) noexcept
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// Positive square root of -p·p. Throws std::domain_error("not subluminal") for spacelike or null p.
double mass(const FourVector& p);

/// Sign of p⁰. Throws std::domain_error for p⁰ = 0.
int energy_sign(const FourVector& p);

/// Subluminal momentum with its cached mass m_p, energy sign φ_p and energy E_p = |p⁰|.
class OnShellMomentum
{
  public:
    /// Mass taken from p itself.
    explicit OnShellMomentum(const FourVector& p);
    /// Checks -p·p = m² to 1e-12 relative.
    OnShellMomentum(const FourVector& p, double m);

    /// Builds p⁰ = sign * sqrt(m² + |p|²).
    static OnShellMomentum from_three_momentum(double m, double px, double py, double pz, int sign = +1);

    const FourVector& p() const noexcept { return p_; }
    double m() const noexcept { return m_; }
    int phi() const noexcept { return phi_; }
    double energy() const noexcept { return phi_ * p_[0]; }

    /// Positive-energy representative φ_p p.
    FourVector forward() const noexcept { return static_cast<double>(phi_) * p_; }

    OnShellMomentum reflected() const { return OnShellMomentum{-p_, m_}; }

  private:
    FourVector p_;
    double m_;
    int phi_;
};

/// Homogeneous Lorentz transformation x'^mu = Λ^mu_nu x^nu.
class LorentzTransform
{
  public:
    LorentzTransform() : matrix_(Eigen::Matrix4d::Identity()) {}
    explicit LorentzTransform(const Eigen::Matrix4d& m) : matrix_(m) {}

    FourVector apply(const FourVector& x) const { return FourVector::from(matrix_ * x.vec()); }
    FourVector operator()(const FourVector& x) const { return apply(x); }

    const Eigen::Matrix4d& matrix() const noexcept { return matrix_; }
    LorentzTransform inverse() const;

    /// Rapidity of a pure boost (acosh of Λ⁰⁰).
    double rapidity() const;

    /// Max entrywise |ΛᵀgΛ - g|.
    double metric_defect() const;

    friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b)
    {
        return LorentzTransform{a.matrix_ * b.matrix_};
    }

  private:
    Eigen::Matrix4d matrix_;
};

/// Pure boost taking (m, 0, 0, 0) to p. Requires p⁰ > 0.
LorentzTransform boost_to(const OnShellMomentum& p);

/// Pure boost along the unit 3-vector n with rapidity eta.
LorentzTransform boost_along(const std::array<double, 3>& n, double eta);

/// [x^mu, p^nu] acting on the mode exp(i k·x) at event x, where p^nu = (1/i) ∂/∂x_nu,
/// evaluated with central differences of step h and divided by the mode value.
/// Should equal i g^{mu nu}.
std::complex<double> position_momentum_commutator(const FourVector& k, const FourVector& x, int mu, int nu,
                                                  double h = 1e-4);

}  // namespace pdirac
