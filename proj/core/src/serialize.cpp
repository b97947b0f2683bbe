#include "netred/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netred {

using nlohmann::json;

namespace {

json rational_node(const RationalFunction& r) {
  return json{{"num", r.num().coeffs()}, {"den", r.den().coeffs()}};
}

RationalFunction rational_from_node(const json& node) {
  if (!node.is_object() || !node.contains("num") || !node.contains("den"))
    throw FileFormatError("rational function must have \"num\" and \"den\"");
  return RationalFunction(
      Polynomial(node.at("num").get<std::vector<double>>()),
      Polynomial(node.at("den").get<std::vector<double>>()));
}

json laplacian_node(const Laplacian& laplacian) {
  const Eigen::MatrixXd& m = laplacian.matrix();
  json edges = json::array();
  for (int i = 0; i < laplacian.size(); ++i)
    for (int j = i + 1; j < laplacian.size(); ++j)
      if (m(i, j) != 0.0) edges.push_back(json::array({i, j, -m(i, j)}));
  return json{{"n", laplacian.size()}, {"edges", std::move(edges)}};
}

Laplacian laplacian_from_node(const json& node) {
  if (!node.is_object() || !node.contains("n") || !node.contains("edges"))
    throw FileFormatError("graph must have \"n\" and \"edges\"");
  const int n = node.at("n").get<int>();
  if (n < 1) throw FileFormatError("graph: \"n\" must be >= 1");
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (const auto& edge : node.at("edges")) {
    if (!edge.is_array() || edge.size() != 3)
      throw FileFormatError("graph: each edge must be [i, j, w]");
    const int i = edge.at(0).get<int>();
    const int j = edge.at(1).get<int>();
    const double w = edge.at(2).get<double>();
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw FileFormatError("graph: edge index out of range");
    if (w < 0.0) throw FileFormatError("graph: negative edge weight");
    adj(i, j) = w;
    adj(j, i) = w;
  }
  return laplacian_from_adjacency(adj);
}

GeneratorParams generator_from_node(const json& node) {
  for (const char* key : {"m", "d", "r", "tau"})
    if (!node.contains(key))
      throw FileFormatError(std::string("generator shorthand missing \"") + key +
                            "\"");
  GeneratorParams p{node.at("m").get<double>(), node.at("d").get<double>(),
                    node.at("r").get<double>(), node.at("tau").get<double>()};
  p.validate();
  return p;
}

json partition_node(const Partition& partition) {
  return json{{"group_a", partition.group_a},
              {"group_b", partition.group_b},
              {"lambda2", partition.lambda2}};
}

Partition partition_from_node(const json& node) {
  Partition out;
  out.group_a = node.at("group_a").get<std::vector<int>>();
  out.group_b = node.at("group_b").get<std::vector<int>>();
  out.lambda2 = node.at("lambda2").get<double>();
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FileFormatError(std::string("JSON parse error: ") + e.what());
  }
}

template <typename Fn>
auto wrap_type_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw FileFormatError(std::string("JSON field error: ") + e.what());
  }
}

}  // namespace

std::string rational_to_json(const RationalFunction& r) {
  return rational_node(r).dump(2) + "\n";
}

RationalFunction rational_from_json(const std::string& text) {
  return wrap_type_errors([&] { return rational_from_node(parse(text)); });
}

std::string laplacian_to_json(const Laplacian& laplacian) {
  return laplacian_node(laplacian).dump(2) + "\n";
}

Laplacian laplacian_from_json(const std::string& text) {
  return wrap_type_errors([&] { return laplacian_from_node(parse(text)); });
}

std::string network_to_json(const NetworkModel& net,
                            const std::optional<PlantedLabels>& planted) {
  json nodes = json::array();
  for (const auto& g : net.nodes) nodes.push_back(rational_node(g));
  json doc{{"f", rational_node(net.coupling)},
           {"nodes", std::move(nodes)},
           {"laplacian", laplacian_node(net.laplacian)}};
  if (planted)
    doc["planted"] =
        json{{"group_a", planted->group_a}, {"group_b", planted->group_b}};
  return doc.dump(2) + "\n";
}

std::string generated_network_to_json(const std::vector<GeneratorParams>& gens,
                                      const RationalFunction& coupling,
                                      const Laplacian& laplacian,
                                      const PlantedLabels& planted) {
  json nodes = json::array();
  for (const auto& p : gens)
    nodes.push_back(json{{"gen",
                          json{{"m", p.inertia},
                               {"d", p.damping},
                               {"r", p.droop},
                               {"tau", p.turbine_tau}}}});
  json doc{{"f", rational_node(coupling)},
           {"nodes", std::move(nodes)},
           {"laplacian", laplacian_node(laplacian)},
           {"planted", json{{"group_a", planted.group_a},
                            {"group_b", planted.group_b}}}};
  return doc.dump(2) + "\n";
}

LoadedNetwork network_from_json(const std::string& text) {
  return wrap_type_errors([&]() -> LoadedNetwork {
    const json doc = parse(text);
    for (const char* key : {"f", "nodes", "laplacian"})
      if (!doc.contains(key))
        throw FileFormatError(std::string("network missing \"") + key + "\"");
    std::vector<RationalFunction> nodes;
    for (const auto& node : doc.at("nodes")) {
      if (node.is_object() && node.contains("gen"))
        nodes.push_back(generator_tf(generator_from_node(node.at("gen"))));
      else
        nodes.push_back(rational_from_node(node));
    }
    NetworkModel model(std::move(nodes), rational_from_node(doc.at("f")),
                       laplacian_from_node(doc.at("laplacian")));
    std::optional<PlantedLabels> planted;
    if (doc.contains("planted")) {
      planted = PlantedLabels{
          doc.at("planted").at("group_a").get<std::vector<int>>(),
          doc.at("planted").at("group_b").get<std::vector<int>>()};
    }
    return LoadedNetwork{std::move(model), std::move(planted)};
  });
}

std::string partition_to_json(const Partition& partition) {
  return partition_node(partition).dump(2) + "\n";
}

Partition partition_from_json(const std::string& text) {
  return wrap_type_errors([&] { return partition_from_node(parse(text)); });
}

std::string reduced_to_json(const ReducedModel& rm) {
  json doc{{"partition", partition_node(rm.partition)},
           {"g_hat_a", rational_node(rm.g_hat_a)},
           {"g_hat_b", rational_node(rm.g_hat_b)},
           {"l_hat_weight", rm.l_hat_weight},
           {"f", rational_node(rm.coupling)}};
  return doc.dump(2) + "\n";
}

ReducedModel reduced_from_json(const std::string& text) {
  return wrap_type_errors([&]() -> ReducedModel {
    const json doc = parse(text);
    ReducedModel rm{partition_from_node(doc.at("partition")),
                    rational_from_node(doc.at("g_hat_a")),
                    rational_from_node(doc.at("g_hat_b")),
                    doc.at("l_hat_weight").get<double>(),
                    rational_from_node(doc.at("f"))};
    const double n_a = static_cast<double>(rm.partition.group_a.size());
    const double n_b = static_cast<double>(rm.partition.group_b.size());
    if (n_a < 1 || n_b < 1)
      throw FileFormatError("reduced model: a group is empty");
    const double expected = rm.partition.lambda2 * n_a * n_b / (n_a + n_b);
    if (std::abs(rm.l_hat_weight - expected) >
        1e-9 * std::max(1.0, std::abs(expected)))
      throw FileFormatError(
          "reduced model: l_hat_weight inconsistent with lambda2 and group "
          "sizes");
    return rm;
  });
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::ostringstream out;
  out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  return out.str();
}

std::string response_to_csv(const ResponseRecord& record) {
  std::ostringstream out;
  out.precision(17);
  const int n = static_cast<int>(record.full_outputs.rows());
  out << 't';
  for (int i = 0; i < n; ++i) out << ",y_" << i;
  out << ",yhat_a,yhat_b,mean_a,mean_b\n";
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out << record.times[k];
    for (int i = 0; i < n; ++i) out << ',' << record.full_outputs(i, k);
    out << ',' << record.reduced_outputs(0, k) << ','
        << record.reduced_outputs(1, k) << ',' << record.group_means(0, k)
        << ',' << record.group_means(1, k) << '\n';
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileFormatError("cannot write " + path.string());
  out << text;
}

}  // namespace netred
