#pragma once

#include <vector>

#include "wearauth/types.hpp"

namespace wearauth {

// The fixed variant catalogue: 15 pitch shifts ascending (-3.5..+3.5 in
// half-semitone steps, 0.0 standing in for the unmodified clip), then 7
// speed factors ascending (0.25..2.0 skipping 1.0), then 80 noise mixes
// (noise_id major, snr ascending over 1e-4..1e4 skipping 1e0). 102 total.
const std::vector<AugmentationSpec>& enumerate_specs();

// Noise support, exposed so the achieved-SNR property is checkable from
// the components alone.
Eigen::VectorXd noise_segment(const AudioClip& clip, Eigen::Index len);
double noise_gain(double p_signal, double p_noise, double snr);

// Pitch shift: resample by 2^(s/12), stretch back to the original length.
// Speed change: overlap-add stretch to round(n/factor) samples, pitch kept.
// Noise mix: signal + g*noise with g = sqrt(P_s/(snr*P_n)); rescaled only
// if the mix peaks above 1. Throws DataError on a silent event.
BreathingEvent apply(const BreathingEvent& event, const AugmentationSpec& spec,
                     const std::vector<AudioClip>& bank);

// All 102 variants of every event, event-major, spec order as enumerated.
// Variants inherit the parent's clip ordinal as their group id.
std::vector<BreathingEvent> augment_all(const std::vector<BreathingEvent>& events,
                                        const std::vector<AudioClip>& bank);

}  // namespace wearauth
