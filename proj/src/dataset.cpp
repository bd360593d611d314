#include "wearauth/dataset.hpp"

#include <fstream>

#include "wearauth/augment.hpp"
#include "wearauth/csv.hpp"
#include "wearauth/features.hpp"
#include "wearauth/segment.hpp"

namespace wearauth {

namespace {

constexpr int kGroups = 6;

std::vector<SampleWindow> required_windows(std::vector<SampleWindow> windows,
                                           std::size_t needed,
                                           const SubjectId& subject,
                                           const char* what) {
  if (windows.size() < needed)
    throw DataError(subject.id + ": " + std::to_string(windows.size()) + " " +
                    what + " windows, need " + std::to_string(needed));
  windows.resize(needed);
  return windows;
}

}  // namespace

InstanceSet build_instances(const Dataset& dataset, ModelKind kind,
                            const Config& config) {
  const std::size_t group_size = enumerate_specs().size();
  const std::size_t per_subject = kGroups * group_size;

  InstanceSet out;
  out.kind = kind;
  out.names = feature_names(kind);
  out.n_groups = kGroups;
  const auto n_rows =
      static_cast<Eigen::Index>(per_subject * dataset.subjects.size());
  out.x.resize(n_rows, static_cast<Eigen::Index>(out.names.size()));
  out.subject.reserve(static_cast<std::size_t>(n_rows));
  out.group.reserve(static_cast<std::size_t>(n_rows));

  MfccParams mfcc_params;
  mfcc_params.sample_rate = config.sample_rate;

  Eigen::Index row = 0;
  for (std::size_t s = 0; s < dataset.subjects.size(); ++s) {
    const SubjectRecord& record = dataset.subjects[s];
    out.ids.push_back(record.id);

    const std::vector<SampleWindow> hr_windows = required_windows(
        windowize(record.heart_rate, config.window_len, config.window_step),
        per_subject, record.id, "heart rate");

    std::vector<SampleWindow> gait_windows;
    if (kind == ModelKind::HRG)
      gait_windows = required_windows(
          windowize(record.gait, config.window_len, config.window_step),
          per_subject, record.id, "gait");

    std::vector<BreathingEvent> events;
    if (kind == ModelKind::HRB) {
      events = extract_events(record.breathing);
      if (events.size() < kGroups)
        throw DataError(record.id.id + ": " + std::to_string(events.size()) +
                        " breathing events, need " + std::to_string(kGroups));
      events.resize(kGroups);
    }

    for (std::size_t i = 0; i < per_subject; ++i) {
      const int group = static_cast<int>(i / group_size);
      BiometricFeatures parts;
      parts.hr = ChannelFeatures{record.id, hr_stat_features(hr_windows[i])};
      if (kind == ModelKind::HRG)
        parts.gait = ChannelFeatures{record.id, gait_stat_features(gait_windows[i])};
      if (kind == ModelKind::HRB) {
        const auto& spec = enumerate_specs()[i % group_size];
        const BreathingEvent variant =
            apply(events[static_cast<std::size_t>(group)], spec, dataset.noise_bank);
        parts.breathing = ChannelFeatures{record.id, mfcc(variant, mfcc_params)};
      }
      const FeatureVector fused = fuse(kind, parts, group);
      out.x.row(row) = fused.values.transpose();
      out.subject.push_back(static_cast<int>(s));
      out.group.push_back(group);
      ++row;
    }
  }
  return out;
}

void write_features_csv(const InstanceSet& instances, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << "subject,group";
  for (const auto& name : instances.names) out << "," << name;
  out << "\n";
  for (Eigen::Index i = 0; i < instances.x.rows(); ++i) {
    out << instances.ids[static_cast<std::size_t>(
                             instances.subject[static_cast<std::size_t>(i)])]
               .id
        << "," << instances.group[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < instances.x.cols(); ++j)
      out << "," << format_double(instances.x(i, j));
    out << "\n";
  }
}

InstanceSet read_features_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.size() < 3 || table.header[0] != "subject" ||
      table.header[1] != "group")
    throw DataError(path + ": expected header subject,group,<features>");

  InstanceSet out;
  out.names.assign(table.header.begin() + 2, table.header.end());
  const auto d = static_cast<Eigen::Index>(out.names.size());
  if (out.names == feature_names(ModelKind::HR))
    out.kind = ModelKind::HR;
  else if (out.names == feature_names(ModelKind::HRG))
    out.kind = ModelKind::HRG;
  else if (out.names == feature_names(ModelKind::HRB))
    out.kind = ModelKind::HRB;
  else
    throw DataError(path + ": feature columns match no model layout");

  out.x.resize(static_cast<Eigen::Index>(table.rows.size()), d);
  int max_group = -1;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string where = path + " row " + std::to_string(i + 2);
    if (row.size() != static_cast<std::size_t>(d) + 2)
      throw DataError(where + ": wrong field count");

    int subject_index = -1;
    for (std::size_t k = 0; k < out.ids.size(); ++k)
      if (out.ids[k].id == row[0]) subject_index = static_cast<int>(k);
    if (subject_index < 0) {
      subject_index = static_cast<int>(out.ids.size());
      out.ids.push_back(SubjectId{row[0]});
    }
    out.subject.push_back(subject_index);

    const int group = static_cast<int>(parse_double(row[1], where + " group"));
    out.group.push_back(group);
    max_group = std::max(max_group, group);
    for (Eigen::Index j = 0; j < d; ++j)
      out.x(static_cast<Eigen::Index>(i), j) =
          parse_double(row[static_cast<std::size_t>(j) + 2],
                       where + " " + out.names[static_cast<std::size_t>(j)]);
  }
  out.n_groups = max_group + 1;
  return out;
}

}  // namespace wearauth
