#include "shuttle/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shuttle::wave {

namespace {

long interval_count(double duration, double sample_rate) {
  if (!(duration > 0.0) || !(sample_rate > 0.0))
    throw std::invalid_argument("waveform: duration and sample_rate must be > 0");
  const long n = std::llround(sample_rate * duration);
  if (n < 100)
    throw std::invalid_argument(
        "waveform: sample_rate * duration must give at least 100 samples");
  return n;
}

WaveformTable sampled_profile(const traj::MotionProfile& profile,
                              double duration, double sample_rate,
                              std::vector<double>& lambda_out) {
  const long n = interval_count(duration, sample_rate);
  WaveformTable t;
  t.sample_rate = sample_rate;
  t.duration = duration;
  t.time.resize(static_cast<std::size_t>(n) + 1);
  lambda_out.resize(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    t.time[static_cast<std::size_t>(i)] = duration * s;
    lambda_out[static_cast<std::size_t>(i)] =
        std::clamp(profile.eval(s, 0), 0.0, 1.0);
  }
  return t;
}

}  // namespace

WaveformTable compile_amplitude_waveforms(
    const traj::MotionProfile& exchange_profile, double duration,
    double sample_rate) {
  std::vector<double> lambda;
  WaveformTable t = sampled_profile(exchange_profile, duration, sample_rate, lambda);
  t.m_amp = std::move(lambda);
  t.s_amp.resize(t.m_amp.size());
  for (std::size_t i = 0; i < t.m_amp.size(); ++i)
    t.s_amp[i] = 1.0 - t.m_amp[i];
  return t;
}

WaveformTable compile_frequency_sweep(const traj::MotionProfile& profile,
                                      double f_start_mhz, double f_end_mhz,
                                      double duration, double sample_rate) {
  std::vector<double> lambda;
  WaveformTable t = sampled_profile(profile, duration, sample_rate, lambda);
  t.m_amp.assign(lambda.size(), 1.0);
  t.s_amp.assign(lambda.size(), 0.0);
  t.aod_freq_mhz.resize(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i)
    t.aod_freq_mhz[i] = f_start_mhz + (f_end_mhz - f_start_mhz) * lambda[i];
  return t;
}

WaveformTable with_hold_tail(const WaveformTable& table, double hold_duration) {
  if (!(hold_duration >= 0.0))
    throw std::invalid_argument("with_hold_tail: hold must be >= 0");
  if (hold_duration == 0.0) return table;
  WaveformTable t = table;
  const double dt = 1.0 / table.sample_rate;
  const long extra = std::llround(hold_duration * table.sample_rate);
  const double t_end = table.time.back();
  for (long i = 1; i <= extra; ++i) {
    t.time.push_back(t_end + static_cast<double>(i) * dt);
    t.m_amp.push_back(table.m_amp.back());
    t.s_amp.push_back(table.s_amp.back());
    if (!table.aod_freq_mhz.empty())
      t.aod_freq_mhz.push_back(table.aod_freq_mhz.back());
  }
  t.duration = table.duration + static_cast<double>(extra) * dt;
  return t;
}

}  // namespace shuttle::wave
