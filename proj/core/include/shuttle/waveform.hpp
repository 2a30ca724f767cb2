#ifndef SHUTTLE_WAVEFORM_HPP
#define SHUTTLE_WAVEFORM_HPP

#include <vector>

#include "shuttle/profile.hpp"

namespace shuttle::wave {

/// Sampled control waveforms, endpoints included (N intervals, N+1 rows).
/// Amplitudes are fractions of the combined depth U0; during an amplitude
/// exchange m_amp(t) + s_amp(t) == 1 at every sample.
struct WaveformTable {
  double sample_rate = 0.0;  // samples/s
  double duration = 0.0;     // s
  std::vector<double> time;  // s
  std::vector<double> m_amp;
  std::vector<double> s_amp;
  std::vector<double> aod_freq_mhz;  // empty when no frequency sweep
};

/// M-trap ramps up along the profile while the S-trap ramps down along its
/// complement, keeping the total depth constant.
WaveformTable compile_amplitude_waveforms(
    const traj::MotionProfile& exchange_profile, double duration,
    double sample_rate);

/// AOD frequency sweep along the profile; amplitudes are held at
/// (m, s) = (1, 0) since the atom rides the moving trap.
WaveformTable compile_frequency_sweep(const traj::MotionProfile& profile,
                                      double f_start_mhz, double f_end_mhz,
                                      double duration, double sample_rate);

/// Appends a constant tail (the post-exchange wait) to a compiled table.
WaveformTable with_hold_tail(const WaveformTable& table, double hold_duration);

}  // namespace shuttle::wave

#endif
