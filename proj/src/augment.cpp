#include "wearauth/augment.hpp"

#include <cmath>

#include "wearauth/errors.hpp"
#include "wearauth/resample.hpp"

namespace wearauth {

namespace {

std::vector<AugmentationSpec> build_specs() {
  std::vector<AugmentationSpec> specs;
  specs.reserve(102);
  for (int i = 0; i <= 14; ++i)
    specs.push_back({PitchShift{-3.5 + 0.5 * i}});
  for (double f : {0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0})
    specs.push_back({SpeedChange{f}});
  for (int id = 0; id < 10; ++id)
    for (double snr : {1e-4, 1e-3, 1e-2, 1e-1, 1e1, 1e2, 1e3, 1e4})
      specs.push_back({NoiseMix{id, snr}});
  return specs;
}

}  // namespace

const std::vector<AugmentationSpec>& enumerate_specs() {
  static const std::vector<AugmentationSpec> specs = build_specs();
  return specs;
}

std::string describe(const AugmentationSpec& spec) {
  char buf[48];
  if (const auto* p = std::get_if<PitchShift>(&spec.kind))
    std::snprintf(buf, sizeof buf, "pitch%+.1f", p->semitones);
  else if (const auto* s = std::get_if<SpeedChange>(&spec.kind))
    std::snprintf(buf, sizeof buf, "speed%.2f", s->factor);
  else if (const auto* n = std::get_if<NoiseMix>(&spec.kind))
    std::snprintf(buf, sizeof buf, "noise%02d_snr%g", n->noise_id, n->snr);
  else
    return "?";
  return buf;
}

Eigen::VectorXd noise_segment(const AudioClip& clip, Eigen::Index len) {
  if (clip.pcm.size() == 0) throw DataError("noise clip is empty");
  Eigen::VectorXd seg(len);
  for (Eigen::Index i = 0; i < len; ++i) seg[i] = clip.pcm[i % clip.pcm.size()];
  return seg;
}

double noise_gain(double p_signal, double p_noise, double snr) {
  if (p_signal <= 0.0) throw DataError("cannot mix noise into a silent event");
  if (p_noise <= 0.0) throw DataError("noise segment is silent");
  if (snr <= 0.0) throw DataError("snr must be positive");
  return std::sqrt(p_signal / (snr * p_noise));
}

BreathingEvent apply(const BreathingEvent& event, const AugmentationSpec& spec,
                     const std::vector<AudioClip>& bank) {
  BreathingEvent out;
  out.subject = event.subject;
  out.sample_rate = event.sample_rate;
  out.origin.augmented = true;
  out.origin.clip_ordinal = event.origin.clip_ordinal;
  out.origin.spec = spec;

  if (const auto* p = std::get_if<PitchShift>(&spec.kind)) {
    const double factor = std::pow(2.0, p->semitones / 12.0);
    if (p->semitones == 0.0) {
      out.pcm = event.pcm;
    } else {
      out.pcm = stretch_ola(resample(event.pcm, factor), event.pcm.size());
    }
  } else if (const auto* s = std::get_if<SpeedChange>(&spec.kind)) {
    // Duration changes, pitch does not: overlap-add stretch, not resampling.
    const auto target = static_cast<Eigen::Index>(
        std::llround(event.pcm.size() / s->factor));
    out.pcm = stretch_ola(event.pcm, target);
  } else if (const auto* n = std::get_if<NoiseMix>(&spec.kind)) {
    if (n->noise_id < 0 || static_cast<std::size_t>(n->noise_id) >= bank.size())
      throw DataError("noise_id " + std::to_string(n->noise_id) +
                      " outside the bank of " + std::to_string(bank.size()));
    const Eigen::Index len = event.pcm.size();
    const Eigen::VectorXd noise =
        noise_segment(bank[static_cast<std::size_t>(n->noise_id)], len);
    const double p_signal = event.pcm.squaredNorm() / len;
    const double p_noise = noise.squaredNorm() / len;
    const double g = noise_gain(p_signal, p_noise, n->snr);
    out.pcm = event.pcm + g * noise;
    const double peak = out.pcm.cwiseAbs().maxCoeff();
    if (peak > 1.0) out.pcm /= peak;
  }
  return out;
}

std::vector<BreathingEvent> augment_all(const std::vector<BreathingEvent>& events,
                                        const std::vector<AudioClip>& bank) {
  if (events.empty()) throw DataError("no events to augment");
  const auto& specs = enumerate_specs();
  std::vector<BreathingEvent> out;
  out.reserve(events.size() * specs.size());
  for (const auto& event : events)
    for (const auto& spec : specs) out.push_back(apply(event, spec, bank));
  return out;
}

}  // namespace wearauth
