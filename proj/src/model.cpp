#include "wearauth/model.hpp"

#include <fstream>
#include <limits>

#include <json.hpp>

#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

using nlohmann::json;

// JSON has no infinity literal; non-finite reals travel as strings.
json encode_real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double decode_real(const json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw DataError("model file: unrecognized real value \"" + s + "\"");
  }
  return j.get<double>();
}

json encode_vector(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(encode_real(v[i]));
  return arr;
}

Eigen::VectorXd decode_vector(const json& arr) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = decode_real(arr[i]);
  return v;
}

json encode_matrix(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rows.push_back(encode_vector(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd decode_matrix(const json& rows, Eigen::Index cols_hint = 0) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) return Eigen::MatrixXd(0, cols_hint);
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(rows[0].size()));
  for (Eigen::Index i = 0; i < n; ++i)
    m.row(i) = decode_vector(rows[static_cast<std::size_t>(i)]).transpose();
  return m;
}

json encode_kernel(const Kernel& k) {
  return {{"kind", k.kind == Kernel::Kind::RBF ? "rbf" : "poly"},
          {"gamma", k.gamma},
          {"degree", k.degree},
          {"coef0", k.coef0},
          {"scale", k.scale}};
}

Kernel decode_kernel(const json& j) {
  Kernel k;
  k.kind = j.at("kind") == "rbf" ? Kernel::Kind::RBF : Kernel::Kind::Polynomial;
  k.gamma = j.at("gamma").get<double>();
  k.degree = j.at("degree").get<int>();
  k.coef0 = j.at("coef0").get<double>();
  k.scale = j.at("scale").get<double>();
  return k;
}

json encode_payload(const TrainedModel& model) {
  json j;
  if (const auto* svm = std::get_if<SvmModel>(&model.payload)) {
    j["type"] = "svm";
    j["support_vectors"] = encode_matrix(svm->support_vectors);
    j["coef"] = encode_vector(svm->coef);
    j["bias"] = svm->bias;
    j["kernel"] = encode_kernel(svm->kernel);
    j["C"] = svm->C;
  } else if (const auto* oc = std::get_if<OneClassSvmModel>(&model.payload)) {
    j["type"] = "ocsvm";
    j["support_vectors"] = encode_matrix(oc->support_vectors);
    j["alpha"] = encode_vector(oc->alpha);
    j["rho"] = oc->rho;
    j["gamma"] = oc->kernel.gamma;
    j["nu"] = oc->nu;
  } else if (const auto* knn = std::get_if<KnnModel>(&model.payload)) {
    j["type"] = "knn";
    j["k"] = knn->k;
    j["points"] = encode_matrix(knn->points);
    j["labels"] = knn->labels;
  } else if (const auto* nb = std::get_if<NbModel>(&model.payload)) {
    j["type"] = "nb";
    j["mean0"] = encode_vector(nb->mean0);
    j["var0"] = encode_vector(nb->var0);
    j["mean1"] = encode_vector(nb->mean1);
    j["var1"] = encode_vector(nb->var1);
    j["log_prior0"] = nb->log_prior0;
    j["log_prior1"] = nb->log_prior1;
  } else if (const auto* rf = std::get_if<ForestModel>(&model.payload)) {
    j["type"] = "rf";
    json trees = json::array();
    for (const auto& tree : rf->trees) {
      json nodes = json::array();
      for (const auto& node : tree.nodes)
        nodes.push_back({node.feature, node.threshold, node.left, node.right,
                         node.leaf_class});
      trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
  }
  return j;
}

void decode_payload(const json& j, TrainedModel& model) {
  const std::string type = j.at("type");
  if (type == "svm") {
    SvmModel svm;
    svm.support_vectors = decode_matrix(j.at("support_vectors"));
    svm.coef = decode_vector(j.at("coef"));
    svm.bias = j.at("bias").get<double>();
    svm.kernel = decode_kernel(j.at("kernel"));
    svm.C = j.at("C").get<double>();
    model.payload = std::move(svm);
  } else if (type == "ocsvm") {
    OneClassSvmModel oc;
    oc.support_vectors = decode_matrix(j.at("support_vectors"));
    oc.alpha = decode_vector(j.at("alpha"));
    oc.rho = j.at("rho").get<double>();
    oc.kernel = rbf_kernel(j.at("gamma").get<double>());
    oc.nu = j.at("nu").get<double>();
    model.payload = std::move(oc);
  } else if (type == "knn") {
    KnnModel knn;
    knn.k = j.at("k").get<int>();
    knn.points = decode_matrix(j.at("points"));
    knn.labels = j.at("labels").get<std::vector<int>>();
    model.payload = std::move(knn);
  } else if (type == "nb") {
    NbModel nb;
    nb.mean0 = decode_vector(j.at("mean0"));
    nb.var0 = decode_vector(j.at("var0"));
    nb.mean1 = decode_vector(j.at("mean1"));
    nb.var1 = decode_vector(j.at("var1"));
    nb.log_prior0 = j.at("log_prior0").get<double>();
    nb.log_prior1 = j.at("log_prior1").get<double>();
    model.payload = std::move(nb);
  } else if (type == "rf") {
    ForestModel rf;
    for (const auto& tree_json : j.at("trees")) {
      ForestModel::Tree tree;
      for (const auto& node_json : tree_json) {
        ForestModel::Node node;
        node.feature = node_json.at(0).get<int>();
        node.threshold = node_json.at(1).get<double>();
        node.left = node_json.at(2).get<int>();
        node.right = node_json.at(3).get<int>();
        node.leaf_class = node_json.at(4).get<int>();
        tree.nodes.push_back(node);
      }
      rf.trees.push_back(std::move(tree));
    }
    model.payload = std::move(rf);
  } else {
    throw DataError("model file: unknown classifier payload \"" + type + "\"");
  }
}

ModelKind kind_from_string(const std::string& s) {
  if (s == "hr") return ModelKind::HR;
  if (s == "hrg") return ModelKind::HRG;
  if (s == "hrb") return ModelKind::HRB;
  throw DataError("model file: unknown model kind \"" + s + "\"");
}

}  // namespace

double decision_value(const TrainedModel& model, const Eigen::VectorXd& features) {
  if (features.size() != static_cast<Eigen::Index>(model.feature_names.size()))
    throw DataError("feature vector length " + std::to_string(features.size()) +
                    " does not match the model's " +
                    std::to_string(model.feature_names.size()));
  const Eigen::VectorXd selected = take_elements(features, model.selection.kept);
  const Eigen::VectorXd scaled = model.scaler.transform(selected);
  return std::visit([&](const auto& payload) { return payload.decision(scaled); },
                    model.payload);
}

double confidence(const TrainedModel& model, const Eigen::VectorXd& features) {
  return model.calibration.confidence(decision_value(model, features));
}

bool predict_valid(const TrainedModel& model, const Eigen::VectorXd& features) {
  return decision_value(model, features) >= 0.0;
}

void save_model(const TrainedModel& model, const std::string& path) {
  json j;
  j["format_version"] = model.format_version;
  j["model_kind"] = to_string(model.kind);
  j["classifier"] = model.classifier;
  j["feature_names"] = model.feature_names;
  j["selection"] = {{"scores", encode_vector(model.selection.scores)},
                    {"kept", model.selection.kept}};
  j["scaler"] = {{"mean", encode_vector(model.scaler.mean)},
                 {"std", encode_vector(model.scaler.std)}};
  j["calibration"] = {{"a", model.calibration.a}, {"b", model.calibration.b}};
  j["payload"] = encode_payload(model);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << "\n";
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(path + ": " + e.what());
  }

  TrainedModel model;
  model.format_version = j.at("format_version").get<int>();
  if (model.format_version != 1)
    throw DataError(path + ": unsupported format_version " +
                    std::to_string(model.format_version));
  model.kind = kind_from_string(j.at("model_kind"));
  model.classifier = j.at("classifier");
  model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  model.selection.scores = decode_vector(j.at("selection").at("scores"));
  model.selection.kept = j.at("selection").at("kept").get<std::vector<int>>();
  model.scaler.mean = decode_vector(j.at("scaler").at("mean"));
  model.scaler.std = decode_vector(j.at("scaler").at("std"));
  model.calibration.a = j.at("calibration").at("a").get<double>();
  model.calibration.b = j.at("calibration").at("b").get<double>();
  decode_payload(j.at("payload"), model);
  return model;
}

}  // namespace wearauth
