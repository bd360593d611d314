#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "wearauth/augment.hpp"
#include "wearauth/errors.hpp"
#include "wearauth/rng.hpp"

using namespace wearauth;

namespace {

BreathingEvent tone_event(double seconds, double freq, int ordinal = 0) {
  BreathingEvent event;
  event.subject = SubjectId{"s00"};
  event.sample_rate = 22050;
  const auto n = static_cast<Eigen::Index>(std::llround(seconds * 22050));
  event.pcm.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    event.pcm[i] = 0.4 * std::sin(2.0 * M_PI * freq * i / 22050.0);
  event.origin.augmented = false;
  event.origin.clip_ordinal = ordinal;
  return event;
}

std::vector<AudioClip> tiny_bank() {
  std::vector<AudioClip> bank;
  Rng rng(99);
  for (int k = 0; k < 10; ++k) {
    AudioClip clip;
    clip.subject = SubjectId{"noise"};
    clip.sample_rate = 22050;
    clip.pcm.resize(4410);
    for (Eigen::Index i = 0; i < clip.pcm.size(); ++i)
      clip.pcm[i] = 0.1 * rng.normal();
    bank.push_back(std::move(clip));
  }
  return bank;
}

}  // namespace

TEST_CASE("the variant catalogue holds 102 distinct specs in fixed order") {
  const auto& specs = enumerate_specs();
  REQUIRE(specs.size() == 102);

  std::set<std::string> labels;
  for (const auto& spec : specs) labels.insert(describe(spec));
  CHECK(labels.size() == 102);

  // Block boundaries and ordering within blocks.
  CHECK(std::get<PitchShift>(specs[0].kind).semitones == -3.5);
  CHECK(std::get<PitchShift>(specs[7].kind).semitones == 0.0);
  CHECK(std::get<PitchShift>(specs[14].kind).semitones == 3.5);
  for (int i = 1; i <= 14; ++i)
    CHECK(std::get<PitchShift>(specs[i].kind).semitones ==
          doctest::Approx(std::get<PitchShift>(specs[i - 1].kind).semitones + 0.5));

  CHECK(std::get<SpeedChange>(specs[15].kind).factor == 0.25);
  CHECK(std::get<SpeedChange>(specs[18].kind).factor == 1.25);
  CHECK(std::get<SpeedChange>(specs[21].kind).factor == 2.0);
  for (int i = 15; i <= 21; ++i)
    CHECK(std::get<SpeedChange>(specs[i].kind).factor != 1.0);

  // Noise block: id-major, snr ascending, 1e0 absent.
  for (int id = 0; id < 10; ++id) {
    for (int j = 0; j < 8; ++j) {
      const auto& mix = std::get<NoiseMix>(specs[22 + id * 8 + j].kind);
      CHECK(mix.noise_id == id);
      if (j > 0)
        CHECK(mix.snr >
              std::get<NoiseMix>(specs[22 + id * 8 + j - 1].kind).snr);
      CHECK(mix.snr != 1.0);
    }
  }
  CHECK(std::get<NoiseMix>(specs[22].kind).snr == 1e-4);
  CHECK(std::get<NoiseMix>(specs[101].kind).snr == 1e4);
}

TEST_CASE("zero pitch shift reproduces the event exactly") {
  const auto event = tone_event(1.0, 440.0);
  const auto out = apply(event, {PitchShift{0.0}}, {});
  REQUIRE(out.pcm.size() == event.pcm.size());
  CHECK((out.pcm - event.pcm).norm() == 0.0);
  CHECK(out.origin.augmented);
  CHECK(out.origin.clip_ordinal == event.origin.clip_ordinal);
}

TEST_CASE("pitch shifts keep the event length") {
  const auto event = tone_event(1.3, 500.0);
  for (double s : {-3.5, -1.0, 2.5, 3.5}) {
    const auto out = apply(event, {PitchShift{s}}, {});
    CHECK(out.pcm.size() == event.pcm.size());
  }
}

TEST_CASE("pitch shift moves the dominant frequency by 2^(s/12)") {
  const auto event = tone_event(1.0, 440.0);
  const auto out = apply(event, {PitchShift{3.0}}, {});
  // Count zero crossings as a cheap frequency estimate.
  const auto crossings = [](const Eigen::VectorXd& x) {
    int c = 0;
    for (Eigen::Index i = 1; i < x.size(); ++i)
      if ((x[i - 1] < 0.0) != (x[i] < 0.0)) ++c;
    return c;
  };
  const double ratio = static_cast<double>(crossings(out.pcm)) /
                       crossings(event.pcm);
  CHECK(ratio == doctest::Approx(std::pow(2.0, 3.0 / 12.0)).epsilon(0.03));
}

TEST_CASE("speed change scales duration to n/factor within one sample") {
  const auto event = tone_event(2.0, 300.0);
  const Eigen::Index n = event.pcm.size();
  for (double f : {0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0}) {
    const auto out = apply(event, {SpeedChange{f}}, {});
    const auto want = static_cast<Eigen::Index>(std::llround(n / f));
    CHECK(std::abs(out.pcm.size() - want) <= 1);
  }
}

TEST_CASE("speed change keeps pitch roughly put") {
  const auto event = tone_event(2.0, 400.0);
  const auto out = apply(event, {SpeedChange{2.0}}, {});
  const auto crossings = [](const Eigen::VectorXd& x) {
    int c = 0;
    for (Eigen::Index i = 1; i < x.size(); ++i)
      if ((x[i - 1] < 0.0) != (x[i] < 0.0)) ++c;
    return c;
  };
  // Half the duration at the same frequency: half the crossings.
  const double per_second_in = crossings(event.pcm) / event.duration();
  const double per_second_out = crossings(out.pcm) / out.duration();
  CHECK(per_second_out == doctest::Approx(per_second_in).epsilon(0.05));
}

TEST_CASE("noise gain follows sqrt(P_s / (snr * P_n))") {
  // P_s = 4, P_n = 1, snr = 100 -> g = sqrt(4 / 100) = 0.2.
  CHECK(noise_gain(4.0, 1.0, 100.0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(noise_gain(1.0, 1.0, 1.0) == 1.0);
  CHECK_THROWS_AS(noise_gain(0.0, 1.0, 1.0), DataError);
  CHECK_THROWS_AS(noise_gain(1.0, 0.0, 1.0), DataError);
  CHECK_THROWS_AS(noise_gain(1.0, 1.0, 0.0), DataError);
}

TEST_CASE("achieved SNR matches the requested ratio") {
  const auto event = tone_event(0.8, 350.0);
  const auto bank = tiny_bank();
  for (const auto& spec : enumerate_specs()) {
    const auto* mix = std::get_if<NoiseMix>(&spec.kind);
    if (!mix) continue;
    const Eigen::Index len = event.pcm.size();
    const Eigen::VectorXd seg = noise_segment(bank[mix->noise_id], len);
    const double p_signal = event.pcm.squaredNorm() / len;
    const double p_noise = seg.squaredNorm() / len;
    const double g = noise_gain(p_signal, p_noise, mix->snr);
    const double achieved = p_signal / (g * g * p_noise);
    CHECK(std::abs(achieved - mix->snr) / mix->snr < 1e-6);

    // The mixed output is the scaled sum (up to the unit-peak rescale).
    const auto out = apply(event, spec, bank);
    const Eigen::VectorXd mixsum = event.pcm + g * seg;
    const double peak = mixsum.cwiseAbs().maxCoeff();
    const Eigen::VectorXd expect = peak > 1.0 ? (mixsum / peak).eval() : mixsum;
    CHECK((out.pcm - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("noise segments tile short bank clips") {
  AudioClip clip;
  clip.subject = SubjectId{"n"};
  clip.sample_rate = 22050;
  clip.pcm.resize(3);
  clip.pcm << 0.1, 0.2, 0.3;
  const Eigen::VectorXd seg = noise_segment(clip, 7);
  REQUIRE(seg.size() == 7);
  CHECK(seg[0] == 0.1);
  CHECK(seg[3] == 0.1);
  CHECK(seg[6] == 0.1);
  CHECK(seg[5] == 0.3);
}

TEST_CASE("a loud mix is rescaled to unit peak") {
  auto event = tone_event(0.5, 250.0);
  event.pcm *= 2.4;  // already clipping before the mix
  const auto bank = tiny_bank();
  const auto out = apply(event, {NoiseMix{0, 1e-4}}, bank);
  CHECK(out.pcm.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
}

TEST_CASE("augmenting six events yields 612 rows, event-major") {
  std::vector<BreathingEvent> events;
  for (int i = 0; i < 6; ++i)
    events.push_back(tone_event(0.5 + 0.1 * i, 300.0 + 40.0 * i, i));
  const auto bank = tiny_bank();
  const auto variants = augment_all(events, bank);
  REQUIRE(variants.size() == 612);
  const auto& specs = enumerate_specs();
  for (std::size_t i = 0; i < variants.size(); ++i) {
    const std::size_t e = i / 102;
    const std::size_t v = i % 102;
    CHECK(variants[i].origin.clip_ordinal == static_cast<int>(e));
    CHECK(variants[i].origin.augmented);
    CHECK(describe(variants[i].origin.spec) == describe(specs[v]));
    CHECK(variants[i].subject.id == "s00");
  }
}

TEST_CASE("silent events cannot take a noise mix") {
  BreathingEvent silent;
  silent.subject = SubjectId{"s"};
  silent.sample_rate = 22050;
  silent.pcm = Eigen::VectorXd::Zero(1000);
  const auto bank = tiny_bank();
  CHECK_THROWS_AS(apply(silent, {NoiseMix{2, 10.0}}, bank), DataError);
}

TEST_CASE("noise ids outside the bank are data errors") {
  const auto event = tone_event(0.3, 300.0);
  auto small = tiny_bank();
  small.resize(2);
  CHECK_THROWS_AS(apply(event, {NoiseMix{5, 10.0}}, small), DataError);
}

TEST_CASE("spec labels are stable") {
  CHECK(describe({PitchShift{-3.5}}) == "pitch-3.5");
  CHECK(describe({PitchShift{0.0}}) == "pitch+0.0");
  CHECK(describe({SpeedChange{0.25}}) == "speed0.25");
  CHECK(describe({NoiseMix{7, 1e-4}}) == "noise07_snr0.0001");
}
