/* Copyright 2026 The dfusion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "learn/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace dfusion {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "dfusion-model";
constexpr int kFormatVersion = 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string KindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kAnn:
      return "ann";
    case ModelKind::kCnn:
      return "cnn";
    case ModelKind::kTree:
      return "tree";
    case ModelKind::kForest:
      return "forest";
  }
  return "unknown";
}

ModelKind ParseKind(const std::string& name) {
  if (name == "ann") return ModelKind::kAnn;
  if (name == "cnn") return ModelKind::kCnn;
  if (name == "tree") return ModelKind::kTree;
  if (name == "forest") return ModelKind::kForest;
  throw InvalidArgument("unknown model kind '" + name +
                        "' (expected ann, cnn, tree or forest)");
}

ModelKind KindOf(const Model& model) {
  return static_cast<ModelKind>(model.index());
}

std::size_t InputDims(const Model& model) {
  return std::visit(
      Overloaded{
          [](const AnnModel& m) { return m.layer_dims.front(); },
          [](const CnnModel& m) {
            return m.config.input_rows * m.config.input_cols;
          },
          [](const TreeModel& m) { return m.n_features; },
          [](const ForestModel& m) { return m.n_features; },
      },
      model);
}

const TrainingHistory& HistoryOf(const Model& model) {
  static const TrainingHistory kEmpty;
  if (const auto* ann = std::get_if<AnnModel>(&model)) return ann->history;
  if (const auto* cnn = std::get_if<CnnModel>(&model)) return cnn->history;
  return kEmpty;
}

Model TrainModel(ModelKind kind, const Dataset& train,
                 const TrainOptions& options, SeededRng& rng) {
  switch (kind) {
    case ModelKind::kAnn:
      return TrainAnn(train, options.ann, rng);
    case ModelKind::kCnn:
      return TrainCnn(train, options.cnn, rng);
    case ModelKind::kTree:
      return TrainTree(train, options.tree, rng);
    case ModelKind::kForest:
      return TrainForest(train, options.forest, rng);
  }
  throw InvalidArgument("unknown model kind");
}

std::vector<double> PredictProba(const Model& model, const Dataset& data) {
  const std::size_t dims = InputDims(model);
  if (!data.empty() && data.dims() != dims) {
    throw DataError("model expects " + std::to_string(dims) +
                    " values per row, data has " +
                    std::to_string(data.dims()));
  }
  std::vector<double> out;
  out.reserve(data.size());
  for (const auto& row : data.rows) {
    out.push_back(std::visit(
        Overloaded{
            [&](const AnnModel& m) { return AnnPredict(m, row); },
            [&](const CnnModel& m) { return CnnForward(m, row); },
            [&](const TreeModel& m) { return TreeProbability(m, row); },
            [&](const ForestModel& m) { return ForestVoteShare(m, row); },
        },
        model));
  }
  return out;
}

std::vector<int> PredictLabels(const Model& model, const Dataset& data) {
  std::vector<int> labels;
  for (double p : PredictProba(model, data)) labels.push_back(p >= 0.5 ? 1 : 0);
  return labels;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Json HistoryJson(const TrainingHistory& history) {
  Json out = Json::array();
  for (const EpochStats& e : history) {
    out.push_back({{"epoch", e.epoch}, {"loss", e.loss}, {"accuracy", e.accuracy}});
  }
  return out;
}

TrainingHistory HistoryFromJson(const Json& j) {
  TrainingHistory h;
  for (const Json& e : j) {
    h.push_back({e.at("epoch").get<int>(), e.at("loss").get<double>(),
                 e.at("accuracy").get<double>()});
  }
  return h;
}

Json TreeConfigJson(const TreeConfig& c) {
  return {{"max_depth", c.max_depth},
          {"min_samples_split", c.min_samples_split},
          {"max_features", c.max_features}};
}

TreeConfig TreeConfigFromJson(const Json& j) {
  TreeConfig c;
  c.max_depth = j.at("max_depth").get<int>();
  c.min_samples_split = j.at("min_samples_split").get<std::size_t>();
  c.max_features = j.at("max_features").get<std::size_t>();
  return c;
}

Json TreeJson(const TreeModel& t) {
  Json feature = Json::array(), threshold = Json::array(), left = Json::array(),
       right = Json::array(), prob = Json::array(), samples = Json::array();
  for (const TreeNode& n : t.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    prob.push_back(n.probability);
    samples.push_back(n.samples);
  }
  return {{"n_features", t.n_features},
          {"seed", t.seed},
          {"config", TreeConfigJson(t.config)},
          {"nodes",
           {{"feature", feature},
            {"threshold", threshold},
            {"left", left},
            {"right", right},
            {"probability", prob},
            {"samples", samples}}}};
}

TreeModel TreeFromJson(const Json& j) {
  TreeModel t;
  t.n_features = j.at("n_features").get<std::size_t>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.config = TreeConfigFromJson(j.at("config"));
  const Json& n = j.at("nodes");
  const std::size_t count = n.at("feature").size();
  for (const char* key : {"threshold", "left", "right", "probability", "samples"}) {
    if (n.at(key).size() != count) {
      throw DataError(std::string("tree node array '") + key +
                      "' has the wrong length");
    }
  }
  if (count == 0) throw DataError("tree has no nodes");
  for (std::size_t i = 0; i < count; ++i) {
    TreeNode node;
    node.feature = n["feature"][i].get<int>();
    node.threshold = n["threshold"][i].get<double>();
    node.left = n["left"][i].get<int>();
    node.right = n["right"][i].get<int>();
    node.probability = n["probability"][i].get<double>();
    node.samples = n["samples"][i].get<std::size_t>();
    if (node.feature >= 0) {
      const auto in_range = [&](int child) {
        return child > static_cast<int>(i) && child < static_cast<int>(count);
      };
      if (static_cast<std::size_t>(node.feature) >= t.n_features ||
          !in_range(node.left) || !in_range(node.right)) {
        throw DataError("tree node " + std::to_string(i) +
                        " references an invalid feature or child");
      }
    }
    t.nodes.push_back(node);
  }
  return t;
}

Json ToJson(const Model& model) {
  Json j;
  j["format"] = kFormat;
  j["version"] = kFormatVersion;
  j["kind"] = KindName(KindOf(model));
  std::visit(
      Overloaded{
          [&](const AnnModel& m) {
            j["seed"] = m.seed;
            j["layer_dims"] = m.layer_dims;
            j["config"] = {{"hidden", m.config.hidden},
                           {"batch_size", m.config.batch_size},
                           {"learning_rate", m.config.learning_rate},
                           {"momentum", m.config.momentum},
                           {"epochs", m.config.epochs}};
            j["norm"] = {{"mean", m.norm.mean}, {"std", m.norm.std}};
            j["params"] = m.params;
            j["history"] = HistoryJson(m.history);
          },
          [&](const CnnModel& m) {
            j["seed"] = m.seed;
            j["config"] = {{"input_rows", m.config.input_rows},
                           {"input_cols", m.config.input_cols},
                           {"conv_filters", m.config.conv_filters},
                           {"dense_units", m.config.dense_units},
                           {"dropout", m.config.dropout},
                           {"batch_size", m.config.batch_size},
                           {"learning_rate", m.config.learning_rate},
                           {"momentum", m.config.momentum},
                           {"epochs", m.config.epochs}};
            j["norm"] = {{"mean", m.input_mean}, {"std", m.input_std}};
            j["params"] = m.params;
            j["history"] = HistoryJson(m.history);
          },
          [&](const TreeModel& m) { j["tree"] = TreeJson(m); },
          [&](const ForestModel& m) {
            j["seed"] = m.seed;
            j["n_features"] = m.n_features;
            j["config"] = {{"n_estimators", m.config.n_estimators},
                           {"bootstrap", m.config.bootstrap},
                           {"tree", TreeConfigJson(m.config.tree)}};
            Json trees = Json::array();
            for (const TreeModel& t : m.trees) trees.push_back(TreeJson(t));
            j["trees"] = std::move(trees);
          },
      },
      model);
  return j;
}

Model FromJson(const Json& j) {
  if (j.value("format", "") != kFormat) throw DataError("not a model document");
  if (j.at("version").get<int>() != kFormatVersion) {
    throw DataError("unsupported model document version");
  }
  switch (ParseKind(j.at("kind").get<std::string>())) {
    case ModelKind::kAnn: {
      AnnModel m = MakeAnn(j.at("layer_dims").get<std::vector<std::size_t>>());
      m.seed = j.at("seed").get<std::uint64_t>();
      const Json& c = j.at("config");
      m.config.hidden = c.at("hidden").get<std::vector<std::size_t>>();
      m.config.batch_size = c.at("batch_size").get<std::size_t>();
      m.config.learning_rate = c.at("learning_rate").get<double>();
      m.config.momentum = c.at("momentum").get<double>();
      m.config.epochs = c.at("epochs").get<int>();
      m.norm.mean = j.at("norm").at("mean").get<std::vector<double>>();
      m.norm.std = j.at("norm").at("std").get<std::vector<double>>();
      m.params = j.at("params").get<std::vector<double>>();
      m.history = HistoryFromJson(j.at("history"));
      if (m.params.size() != m.ParameterCount()) {
        throw DataError("ANN parameter count " +
                        std::to_string(m.params.size()) +
                        " does not match layer_dims (" +
                        std::to_string(m.ParameterCount()) + ")");
      }
      if (m.norm.mean.size() != m.layer_dims.front() ||
          m.norm.std.size() != m.layer_dims.front()) {
        throw DataError("ANN normalization width does not match layer_dims");
      }
      if (m.layer_dims.size() != m.config.hidden.size() + 2 ||
          !std::equal(m.config.hidden.begin(), m.config.hidden.end(),
                      m.layer_dims.begin() + 1)) {
        throw DataError("ANN hidden config does not match layer_dims");
      }
      return m;
    }
    case ModelKind::kCnn: {
      CnnModel m;
      m.seed = j.at("seed").get<std::uint64_t>();
      const Json& c = j.at("config");
      m.config.input_rows = c.at("input_rows").get<std::size_t>();
      m.config.input_cols = c.at("input_cols").get<std::size_t>();
      m.config.conv_filters = c.at("conv_filters").get<std::vector<std::size_t>>();
      m.config.dense_units = c.at("dense_units").get<std::size_t>();
      m.config.dropout = c.at("dropout").get<double>();
      m.config.batch_size = c.at("batch_size").get<std::size_t>();
      m.config.learning_rate = c.at("learning_rate").get<double>();
      m.config.momentum = c.at("momentum").get<double>();
      m.config.epochs = c.at("epochs").get<int>();
      m.input_mean = j.at("norm").at("mean").get<double>();
      m.input_std = j.at("norm").at("std").get<double>();
      m.params = j.at("params").get<std::vector<double>>();
      m.history = HistoryFromJson(j.at("history"));
      const std::size_t expected = ComputeCnnShape(m.config).total;
      if (m.params.size() != expected) {
        throw DataError("CNN parameter count " +
                        std::to_string(m.params.size()) +
                        " does not match its config (" +
                        std::to_string(expected) + ")");
      }
      return m;
    }
    case ModelKind::kTree:
      return TreeFromJson(j.at("tree"));
    case ModelKind::kForest: {
      ForestModel m;
      m.seed = j.at("seed").get<std::uint64_t>();
      m.n_features = j.at("n_features").get<std::size_t>();
      const Json& c = j.at("config");
      m.config.n_estimators = c.at("n_estimators").get<std::size_t>();
      m.config.bootstrap = c.at("bootstrap").get<bool>();
      m.config.tree = TreeConfigFromJson(c.at("tree"));
      for (const Json& t : j.at("trees")) {
        m.trees.push_back(TreeFromJson(t));
        if (m.trees.back().n_features != m.n_features) {
          throw DataError("forest tree width does not match n_features");
        }
      }
      if (m.trees.size() != m.config.n_estimators) {
        throw DataError("forest holds " + std::to_string(m.trees.size()) +
                        " trees, config says " +
                        std::to_string(m.config.n_estimators));
      }
      return m;
    }
  }
  throw DataError("unknown model kind");
}

}  // namespace

std::string SerializeModel(const Model& model) {
  return ToJson(model).dump(1) + "\n";
}

Model ParseModel(const std::string& text) {
  try {
    return FromJson(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model document: ") + e.what());
  }
}

void SaveModel(const Model& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write model file " + path);
  out << SerializeModel(model);
  if (!out) throw DataError("failed writing model file " + path);
}

Model LoadModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseModel(ss.str());
}

std::vector<FeatureImportance> PermutationImportance(const Model& model,
                                                     const Dataset& test,
                                                     int repeats,
                                                     SeededRng& rng) {
  if (KindOf(model) == ModelKind::kCnn) {
    throw InvalidArgument("permutation importance needs a tabular model");
  }
  if (test.empty() || !test.FullyLabeled()) {
    throw DataError("permutation importance needs a labeled, non-empty set");
  }
  if (repeats < 1) throw InvalidArgument("repeats must be positive");
  auto accuracy = [&](const Dataset& ds) {
    const std::vector<int> pred = PredictLabels(model, ds);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
      correct += pred[i] == ds.labels[i] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(ds.size());
  };
  const double baseline = accuracy(test);
  std::vector<FeatureImportance> out;
  for (std::size_t f = 0; f < test.dims(); ++f) {
    Dataset permuted = test;
    std::vector<double> column(test.size());
    std::vector<double> drops;
    for (int r = 0; r < repeats; ++r) {
      for (std::size_t i = 0; i < test.size(); ++i) column[i] = test.rows[i][f];
      rng.Shuffle(column);
      for (std::size_t i = 0; i < test.size(); ++i) {
        permuted.rows[i][f] = column[i];
      }
      drops.push_back(baseline - accuracy(permuted));
    }
    FeatureImportance fi;
    fi.index = f;
    fi.name = f < test.feature_names.size() ? test.feature_names[f]
                                            : "f" + std::to_string(f);
    double sum = 0.0;
    for (double d : drops) sum += d;
    fi.mean_drop = sum / static_cast<double>(repeats);
    double sq = 0.0;
    for (double d : drops) sq += (d - fi.mean_drop) * (d - fi.mean_drop);
    fi.std_drop = std::sqrt(sq / static_cast<double>(repeats));
    out.push_back(fi);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const FeatureImportance& a, const FeatureImportance& b) {
                     return a.mean_drop > b.mean_drop;
                   });
  return out;
}

}  // namespace dfusion
