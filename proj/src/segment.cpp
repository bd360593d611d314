#include "wearauth/segment.hpp"

#include <cmath>

#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

Eigen::Index window_count(Eigen::Index n, int window, int step) {
  if (window <= 0 || step <= 0) throw UsageError("window and step must be positive");
  if (n < window) return 0;
  return (n - window) / step + 1;
}

}  // namespace

std::vector<SampleWindow> windowize(const HeartRateSeries& series, int window,
                                    int step) {
  const Eigen::Index count = window_count(series.size(), window, step);
  std::vector<SampleWindow> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    SampleWindow w;
    w.subject = series.subject;
    w.kind = WindowKind::HeartRate;
    w.index = static_cast<int>(i);
    w.channels = series.bpm.segment(i * step, window).transpose();
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<SampleWindow> windowize(const GaitSeries& series, int window,
                                    int step) {
  const Eigen::Index count = window_count(series.size(), window, step);
  std::vector<SampleWindow> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    SampleWindow w;
    w.subject = series.subject;
    w.kind = WindowKind::Gait;
    w.index = static_cast<int>(i);
    w.channels = series.channels.middleCols(i * step, window);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<BreathingEvent> extract_events(const AudioClip& clip,
                                           const EventExtractionParams& params) {
  const Eigen::Index n = clip.pcm.size();
  if (n == 0 || clip.sample_rate <= 0)
    throw DataError("cannot extract events from an empty clip");

  const auto to_samples = [&](double seconds) {
    return static_cast<Eigen::Index>(std::llround(seconds * clip.sample_rate));
  };
  const Eigen::Index frame = std::max<Eigen::Index>(1, to_samples(params.frame_s));
  const Eigen::Index hop = std::max<Eigen::Index>(1, to_samples(params.hop_s));

  const double clip_rms = std::sqrt(clip.pcm.squaredNorm() / n);
  const double threshold = std::max(params.floor_rms, params.rel_rms * clip_rms);

  // Active sample spans [begin, end), one per run of loud frames.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> spans;
  const Eigen::Index n_frames = n >= frame ? (n - frame) / hop + 1 : 0;
  bool active = false;
  Eigen::Index begin = 0;
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    const Eigen::Index start = f * hop;
    const double rms = std::sqrt(clip.pcm.segment(start, frame).squaredNorm() /
                                 static_cast<double>(frame));
    const bool loud = rms > threshold;
    if (loud && !active) {
      active = true;
      begin = start;
    } else if (!loud && active) {
      active = false;
      spans.emplace_back(begin, start - hop + frame);
    }
  }
  if (active) spans.emplace_back(begin, n);

  const Eigen::Index min_gap = to_samples(params.min_gap_s);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> merged;
  for (const auto& span : spans) {
    if (!merged.empty() && span.first - merged.back().second < min_gap)
      merged.back().second = span.second;
    else
      merged.push_back(span);
  }

  const Eigen::Index min_len = to_samples(params.min_len_s);
  const Eigen::Index max_len = to_samples(params.max_len_s);
  std::vector<BreathingEvent> events;
  for (const auto& span : merged) {
    Eigen::Index len = span.second - span.first;
    if (len < min_len) continue;
    if (len > max_len) len = max_len;
    BreathingEvent event;
    event.subject = clip.subject;
    event.sample_rate = clip.sample_rate;
    event.pcm = clip.pcm.segment(span.first, len);
    event.origin.augmented = false;
    event.origin.clip_ordinal = static_cast<int>(events.size());
    events.push_back(std::move(event));
  }
  return events;
}

}  // namespace wearauth
