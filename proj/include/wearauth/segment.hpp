#pragma once

#include <vector>

#include "wearauth/types.hpp"

namespace wearauth {

// Slice a stream into fixed windows. Yields floor((N - window) / step) + 1
// windows (none when N < window); trailing samples that do not fill a
// window are dropped.
std::vector<SampleWindow> windowize(const HeartRateSeries& series,
                                    int window = 10, int step = 5);
std::vector<SampleWindow> windowize(const GaitSeries& series,
                                    int window = 10, int step = 5);

struct EventExtractionParams {
  double frame_s = 0.025;    // RMS analysis frame
  double hop_s = 0.010;
  double floor_rms = 1e-4;   // absolute silence floor
  double rel_rms = 0.1;      // threshold as a fraction of clip RMS
  double min_gap_s = 0.15;   // active runs closer than this are merged
  double min_len_s = 0.2;    // shorter runs are discarded
  double max_len_s = 5.0;    // longer runs are truncated
};

// Energy-gated event extraction: frames whose RMS exceeds
// max(floor_rms, rel_rms * clip_rms) are active; active spans are merged
// across short gaps, length-filtered, and cut from the clip in order.
std::vector<BreathingEvent> extract_events(const AudioClip& clip,
                                           const EventExtractionParams& params = {});

}  // namespace wearauth
