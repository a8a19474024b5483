#include <string>

#include <json.hpp>

#include "gradecast/errors.hpp"
#include "gradecast/nn.hpp"
#include "nn_internal.hpp"
#include "text_util.hpp"

namespace gradecast {

namespace {

using nlohmann::json;

constexpr const char* kNetFormat = "gradecast-net/1";

json spec_json(const NetSpec& spec) {
  if (const CnnSpec* cnn = std::get_if<CnnSpec>(&spec)) {
    return json{{"kind", "cnn"},
                {"conv_filters", cnn->conv_filters},
                {"kernel_size", cnn->kernel_size},
                {"pool_size", cnn->pool_size},
                {"dense_units", cnn->dense_units},
                {"output_classes", cnn->output_classes},
                {"epochs", cnn->epochs},
                {"batch_size", cnn->batch_size},
                {"seed", cnn->seed}};
  }
  const LstmSpec& lstm = std::get<LstmSpec>(spec);
  return json{{"kind", "lstm"},
              {"hidden_units", lstm.hidden_units},
              {"output_classes", lstm.output_classes},
              {"epochs", lstm.epochs},
              {"batch_size", lstm.batch_size},
              {"seed", lstm.seed}};
}

NetSpec spec_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "cnn") {
    CnnSpec spec;
    spec.conv_filters = j.at("conv_filters").get<int>();
    spec.kernel_size = j.at("kernel_size").get<int>();
    spec.pool_size = j.at("pool_size").get<int>();
    spec.dense_units = j.at("dense_units").get<int>();
    spec.output_classes = j.at("output_classes").get<int>();
    spec.epochs = j.at("epochs").get<int>();
    spec.batch_size = j.at("batch_size").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  }
  if (kind == "lstm") {
    LstmSpec spec;
    spec.hidden_units = j.at("hidden_units").get<int>();
    spec.output_classes = j.at("output_classes").get<int>();
    spec.epochs = j.at("epochs").get<int>();
    spec.batch_size = j.at("batch_size").get<int>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  }
  throw data_error("model file: unknown architecture '" + kind + "'");
}

}  // namespace

std::string net_to_json(const TrainedNet& net) {
  json doc;
  doc["format"] = kNetFormat;
  doc["architecture"] = spec_json(net.architecture);
  doc["input_width"] = net.input_width;
  json class_order = json::array();
  for (LabelClass c : net.class_order) class_order.push_back(to_string(c));
  doc["class_order"] = std::move(class_order);
  doc["training_log"] = net.training_log;
  json params = json::array();
  for (const ParamBuffer& p : net.parameters) {
    params.push_back(json{{"name", p.name},
                          {"rows", p.values.rows()},
                          {"cols", p.values.cols()},
                          {"data", p.values.data()}});
  }
  doc["parameters"] = std::move(params);
  return doc.dump(2) + "\n";
}

TrainedNet net_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw data_error(std::string("model file is not valid JSON: ") + e.what());
  }
  if (doc.value("format", "") != kNetFormat) {
    throw data_error("model file: unsupported format '" + doc.value("format", "") + "'");
  }

  TrainedNet net;
  net.architecture = spec_from_json(doc.at("architecture"));
  net.input_width = doc.at("input_width").get<std::size_t>();
  const auto class_order = doc.at("class_order").get<std::vector<std::string>>();
  if (class_order.size() != 3) {
    throw data_error("model file: class_order must have 3 entries");
  }
  for (int c = 0; c < kNumClasses; ++c) {
    net.class_order[c] = label_from_string(class_order[c]);
  }
  net.training_log = doc.at("training_log").get<std::vector<double>>();

  const std::size_t expected =
      std::holds_alternative<CnnSpec>(net.architecture) ? detail::kCnnParamCount
                                                        : detail::kLstmParamCount;
  const json& params = doc.at("parameters");
  if (params.size() != expected) {
    throw data_error("model file: expected " + std::to_string(expected) +
                     " parameter buffers, got " + std::to_string(params.size()));
  }
  for (const json& p : params) {
    ParamBuffer buf;
    buf.name = p.at("name").get<std::string>();
    const std::size_t rows = p.at("rows").get<std::size_t>();
    const std::size_t cols = p.at("cols").get<std::size_t>();
    const auto data = p.at("data").get<std::vector<double>>();
    if (data.size() != rows * cols) {
      throw data_error("model file: buffer '" + buf.name + "' has " +
                       std::to_string(data.size()) + " values for a " + std::to_string(rows) +
                       "x" + std::to_string(cols) + " shape");
    }
    buf.values = Matrix(rows, cols);
    buf.values.data() = data;
    net.parameters.push_back(std::move(buf));
  }
  return net;
}

void save_net(const TrainedNet& net, const std::string& path) {
  detail::write_file(path, net_to_json(net));
}

TrainedNet load_net(const std::string& path) {
  return net_from_json(detail::read_file(path));
}

}  // namespace gradecast
