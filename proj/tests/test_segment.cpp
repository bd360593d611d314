#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wearauth/ingest.hpp"
#include "wearauth/rng.hpp"
#include "wearauth/segment.hpp"

using namespace wearauth;

namespace {

HeartRateSeries flat_hr(int n) {
  HeartRateSeries series;
  series.subject = SubjectId{"s"};
  series.bpm = Eigen::VectorXd::Constant(n, 70.0);
  for (int i = 0; i < n; ++i) series.timestamps.push_back(60.0 * i);
  return series;
}

}  // namespace

TEST_CASE("window counts follow floor((N - w) / s) + 1") {
  CHECK(windowize(flat_hr(4005), 10, 5).size() == 800);
  CHECK(windowize(flat_hr(10), 10, 5).size() == 1);
  CHECK(windowize(flat_hr(14), 10, 5).size() == 1);
  CHECK(windowize(flat_hr(15), 10, 5).size() == 2);
  CHECK(windowize(flat_hr(9), 10, 5).empty());

  GaitSeries gait;
  gait.subject = SubjectId{"s"};
  gait.channels = Eigen::MatrixXd::Zero(6, 3605);
  for (int i = 0; i < 3605; ++i) gait.timestamps.push_back(0.02 * i);
  CHECK(windowize(gait, 10, 5).size() == 720);
}

TEST_CASE("windows carry contiguous strided slices") {
  HeartRateSeries series = flat_hr(25);
  for (int i = 0; i < 25; ++i) series.bpm[i] = 50.0 + i;
  const auto windows = windowize(series, 10, 5);
  REQUIRE(windows.size() == 4);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    CHECK(windows[w].kind == WindowKind::HeartRate);
    CHECK(windows[w].channels.rows() == 1);
    CHECK(windows[w].channels.cols() == 10);
    CHECK(windows[w].index == static_cast<int>(w));
    for (int j = 0; j < 10; ++j)
      CHECK(windows[w].channels(0, j) == 50.0 + 5.0 * static_cast<double>(w) + j);
  }
}

TEST_CASE("gait windows keep all six channels") {
  GaitSeries gait;
  gait.subject = SubjectId{"g"};
  gait.channels.resize(6, 40);
  for (int c = 0; c < 6; ++c)
    for (int i = 0; i < 40; ++i) gait.channels(c, i) = 10.0 * c + i;
  for (int i = 0; i < 40; ++i) gait.timestamps.push_back(0.02 * i);
  const auto windows = windowize(gait, 10, 5);
  REQUIRE(windows.size() == 7);
  CHECK(windows[2].channels.rows() == 6);
  CHECK(windows[2].channels(3, 0) == 40.0);  // channel gx, sample 10
  CHECK(windows[2].kind == WindowKind::Gait);
}

TEST_CASE("degenerate window parameters are usage errors") {
  CHECK_THROWS_AS(windowize(flat_hr(20), 0, 5), UsageError);
  CHECK_THROWS_AS(windowize(flat_hr(20), 10, 0), UsageError);
  CHECK_THROWS_AS(windowize(flat_hr(20), -3, 5), UsageError);
}

TEST_CASE("event extraction finds the six synthetic bursts in order") {
  const Dataset dataset = synth_dataset(3, 2, 1.0);
  const auto events = extract_events(dataset.subjects[0].breathing);
  REQUIRE(events.size() == 6);
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].subject.id == dataset.subjects[0].id.id);
    CHECK(events[i].sample_rate == 22050);
    CHECK(events[i].origin.augmented == false);
    CHECK(events[i].origin.clip_ordinal == static_cast<int>(i));
    CHECK(events[i].duration() > 0.8);
    CHECK(events[i].duration() < 2.5);
  }
}

TEST_CASE("silent clips produce no events") {
  AudioClip clip;
  clip.subject = SubjectId{"s"};
  clip.sample_rate = 22050;
  clip.pcm = Eigen::VectorXd::Zero(22050);
  CHECK(extract_events(clip).empty());
}

TEST_CASE("a single long burst is truncated to the length cap") {
  AudioClip clip;
  clip.subject = SubjectId{"s"};
  clip.sample_rate = 22050;
  clip.pcm.resize(22050 * 8);
  Rng rng(4);
  for (Eigen::Index i = 0; i < clip.pcm.size(); ++i)
    clip.pcm[i] = 0.3 * rng.normal();
  const auto events = extract_events(clip);
  REQUIRE(events.size() == 1);
  CHECK(events[0].duration() <= 5.0 + 0.05);
}

TEST_CASE("short blips are discarded") {
  AudioClip clip;
  clip.subject = SubjectId{"s"};
  clip.sample_rate = 22050;
  clip.pcm = Eigen::VectorXd::Zero(22050);
  // 50 ms of tone: below the 200 ms minimum event length.
  for (int i = 0; i < 1102; ++i)
    clip.pcm[5000 + i] = 0.5 * std::sin(2.0 * M_PI * 800.0 * i / 22050.0);
  CHECK(extract_events(clip).empty());
}
