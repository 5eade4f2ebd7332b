#include "gyrokit/junction.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <utility>

#include "gyrokit/errors.hpp"

namespace gyrokit {

namespace {

/// Overflow-safe logistic sigma(z) = 1/(1+exp(-z)).
double sigma_of(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double ez = std::exp(z);
  return ez / (1.0 + ez);
}

}  // namespace

TransmissionChannel TransmissionChannel::constant(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmission: constant value outside [0,1]");
  TransmissionChannel c;
  c.f_[0] = [t](double) { return t; };
  for (int k = 1; k <= 4; ++k) c.f_[k] = [](double) { return 0.0; };
  return c;
}

TransmissionChannel TransmissionChannel::logistic(double t_max, double v_th, double v_w) {
  if (!(t_max > 0.0 && t_max <= 1.0)) throw DomainError("transmission: t_max outside (0,1]");
  if (!(v_w > 0.0)) throw DomainError("transmission: logistic width must be > 0");
  TransmissionChannel c;
  c.f_[0] = [=](double v) { return t_max * sigma_of((v - v_th) / v_w); };
  // Derivatives of the logistic reduce to polynomials in sigma times
  // sigma(1-sigma); the closed forms below are exercised against finite
  // differences in the test suite.
  c.f_[1] = [=](double v) {
    const double s = sigma_of((v - v_th) / v_w);
    return t_max * s * (1.0 - s) / v_w;
  };
  c.f_[2] = [=](double v) {
    const double s = sigma_of((v - v_th) / v_w);
    return t_max * s * (1.0 - s) * (1.0 - 2.0 * s) / (v_w * v_w);
  };
  c.f_[3] = [=](double v) {
    const double s = sigma_of((v - v_th) / v_w);
    return t_max * s * (1.0 - s) * (1.0 + s * (-6.0 + 6.0 * s)) / (v_w * v_w * v_w);
  };
  c.f_[4] = [=](double v) {
    const double s = sigma_of((v - v_th) / v_w);
    return t_max * s * (1.0 - s) * (1.0 + s * (-14.0 + s * (36.0 - 24.0 * s))) /
           (v_w * v_w * v_w * v_w);
  };
  return c;
}

TransmissionChannel TransmissionChannel::custom(std::function<double(double)> value,
                                                std::function<double(double)> d1,
                                                std::function<double(double)> d2,
                                                std::function<double(double)> d3,
                                                std::function<double(double)> d4) {
  if (!value) throw DomainError("transmission: custom channel needs a value closure");
  TransmissionChannel c;
  c.f_[0] = std::move(value);
  c.f_[1] = std::move(d1);
  c.f_[2] = std::move(d2);
  c.f_[3] = std::move(d3);
  c.f_[4] = std::move(d4);
  return c;
}

double TransmissionChannel::value(double v) const {
  const double t = f_[0](v);
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("transmission: value outside [0,1]");
  return t;
}

double TransmissionChannel::derivative(double v, int order) const {
  if (order < 0 || order > 4) throw DomainError("transmission: derivative order must be 0..4");
  if (order == 0) return value(v);
  if (!f_[order]) throw DomainError("transmission: derivative closure not provided");
  return f_[order](v);
}

void JunctionSpec::validate() const {
  if (!(gap > 0.0)) throw DomainError("junction: gap must be > 0");
  if (channels.empty()) throw DomainError("junction: at least one channel required");
}

double abs_energy(const JunctionSpec& spec, double phi1) {
  spec.validate();
  const double gap = spec.gap_joule();
  const double s = std::sin(kPi * (phi1 - spec.external_flux));
  const double s2 = s * s;
  double sum = 0.0;
  for (const auto& ch : spec.channels) {
    const double u = std::max(1.0 - ch.value(spec.bias_voltage) * s2, 0.0);
    sum += std::sqrt(u);
  }
  return -gap * sum;
}

double weak_limit_ej(const JunctionSpec& spec, double v, double warn_threshold, bool* clipped) {
  spec.validate();
  double sum = 0.0;
  bool above = false;
  for (const auto& ch : spec.channels) {
    const double t = ch.value(v);
    if (t > warn_threshold) above = true;
    sum += t;
  }
  if (clipped != nullptr) *clipped = above;
  return spec.gap_joule() * sum / 4.0;
}

double large_transmission_energy(double gap_joule, double t, double phi1, double sec_floor) {
  if (!(gap_joule > 0.0)) throw DomainError("junction: gap must be > 0");
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("junction: transmission outside [0,1]");
  if (!(sec_floor > 0.0)) throw DomainError("junction: sec_floor must be > 0");
  const double c = std::cos(kPi * phi1);
  const double s = std::sin(kPi * phi1);
  if (std::abs(c) < sec_floor) {
    throw DomainError("junction: large-transmission form diverges at half flux quantum");
  }
  return -gap_joule * std::abs(c) + 0.5 * gap_joule * (t - 1.0) * s * s / std::abs(c);
}

double gatemon_invert(double f_q_hz, double e_c_joule) {
  if (!(e_c_joule > 0.0)) throw DomainError("junction: charging energy must be > 0");
  if (!(f_q_hz >= 0.0)) throw DomainError("junction: qubit frequency must be >= 0");
  const double a = Constants::h * f_q_hz + e_c_joule;
  return a * a / (8.0 * e_c_joule);
}

TabulatedEnergy::TabulatedEnergy(std::vector<double> voltage, std::vector<double> samples,
                                 Kind kind, EnergyUnit unit, double e_c_joule, double smoothing)
    : spline_([&] {
        if (voltage.size() != samples.size()) {
          throw IngestError("tabulated energy: voltage and sample counts differ");
        }
        std::vector<double> ej(samples.size());
        if (kind == Kind::direct_ej) {
          for (std::size_t i = 0; i < samples.size(); ++i) ej[i] = to_joule(samples[i], unit);
        } else {
          for (std::size_t i = 0; i < samples.size(); ++i) {
            ej[i] = gatemon_invert(samples[i], e_c_joule);
          }
        }
        return SmoothingSpline(std::move(voltage), std::move(ej), smoothing);
      }()) {}

double TabulatedEnergy::ej(double v) const { return spline_.value(v); }

double TabulatedEnergy::derivative(double v, int order) const {
  if (order < 1 || order > 3) throw DomainError("tabulated energy: derivative order must be 1..3");
  if (!(v > v_min() && v < v_max())) {
    throw DomainError("tabulated energy: derivative point must lie strictly inside the hull");
  }
  return spline_.derivative(v, order);
}

double ej_derivative(const TabulatedEnergy& tab, double v, int order) {
  return tab.derivative(v, order);
}

namespace {

std::mutex fftw_plan_mutex;  // FFTW plan creation is not thread-safe

SpectralProbeResult probe_series(const std::function<double(double)>& energy_of_v, double v0,
                                 double amp, double omega_ac, std::size_t n_periods,
                                 std::size_t samples_per_period) {
  if (!(amp >= 0.0)) throw DomainError("spectral probe: amplitude must be >= 0");
  if (!(omega_ac > 0.0)) throw DomainError("spectral probe: drive frequency must be > 0");
  if (n_periods < 1) throw DomainError("spectral probe: need at least one period");
  if (samples_per_period < 4) throw DomainError("spectral probe: need >= 4 samples per period");

  const std::size_t n = n_periods * samples_per_period;
  const double dt = (kTwoPi / omega_ac) / static_cast<double>(samples_per_period);
  std::vector<double> series(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * dt;
    series[k] = energy_of_v(v0 + amp * std::sin(omega_ac * t));
  }

  const std::size_t n_out = n / 2 + 1;
  std::vector<fftw_complex> out(n_out);
  {
    std::unique_lock<std::mutex> lock(fftw_plan_mutex);
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), series.data(), out.data(),
                                          FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    if (plan == nullptr) throw NumericsError("spectral probe: FFT plan creation failed");
    lock.unlock();
    fftw_execute(plan);
    lock.lock();
    fftw_destroy_plan(plan);
  }

  SpectralProbeResult res;
  res.omega.resize(n_out);
  res.magnitude.resize(n_out);
  for (std::size_t j = 0; j < n_out; ++j) {
    res.omega[j] = omega_ac * static_cast<double>(j) / static_cast<double>(n_periods);
    const double mag = std::hypot(out[j][0], out[j][1]) / static_cast<double>(n);
    const bool interior = (j != 0) && !(n % 2 == 0 && j == n / 2);
    res.magnitude[j] = interior ? 2.0 * mag : mag;
  }
  res.drive_bin = n_periods;
  return res;
}

}  // namespace

SpectralProbeResult spectral_probe(const TabulatedEnergy& tab, double v0, double amp,
                                   double omega_ac, double phi1, std::size_t n_periods,
                                   std::size_t samples_per_period) {
  if (!(v0 - amp >= tab.v_min() && v0 + amp <= tab.v_max())) {
    throw DomainError("spectral probe: drive window leaves the tabulated hull");
  }
  const double proj = std::cos(kTwoPi * phi1);
  return probe_series([&](double v) { return -tab.ej(v) * proj; }, v0, amp, omega_ac, n_periods,
                      samples_per_period);
}

SpectralProbeResult spectral_probe(const JunctionSpec& spec, double v0, double amp,
                                   double omega_ac, double phi1, std::size_t n_periods,
                                   std::size_t samples_per_period) {
  spec.validate();
  JunctionSpec biased = spec;
  return probe_series(
      [&](double v) {
        biased.bias_voltage = v;
        return abs_energy(biased, phi1);
      },
      v0, amp, omega_ac, n_periods, samples_per_period);
}

}  // namespace gyrokit
