#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netred/dynamics.hpp"
#include "netred/graph.hpp"
#include "netred/reduction.hpp"
#include "netred/sim.hpp"

namespace netred {

/// Ground-truth group labels carried alongside generated models so
/// clustering quality can be scored later.
struct PlantedLabels {
  std::vector<int> group_a;
  std::vector<int> group_b;
};

struct LoadedNetwork {
  NetworkModel model;
  std::optional<PlantedLabels> planted;
};

// JSON schemas (all field order and float formatting deterministic):
//   rational   {"num":[c0,c1,...], "den":[d0,d1,...]}        ascending degree
//   graph      {"n":int, "edges":[[i,j,w],...]}              0-based, i<j
//   network    {"f":rational, "nodes":[rational|{"gen":{"m","d","r","tau"}}],
//               "laplacian":graph, "planted":{...}?}
//   partition  {"group_a":[...], "group_b":[...], "lambda2":x}
//   reduced    {"partition":partition, "g_hat_a":rational, "g_hat_b":rational,
//               "l_hat_weight":x, "f":rational}

std::string rational_to_json(const RationalFunction& r);
RationalFunction rational_from_json(const std::string& text);

std::string laplacian_to_json(const Laplacian& laplacian);
Laplacian laplacian_from_json(const std::string& text);

std::string network_to_json(const NetworkModel& net,
                            const std::optional<PlantedLabels>& planted = {});
/// Writes the per-node generator shorthand instead of expanded rationals.
std::string generated_network_to_json(const std::vector<GeneratorParams>& gens,
                                      const RationalFunction& coupling,
                                      const Laplacian& laplacian,
                                      const PlantedLabels& planted);
LoadedNetwork network_from_json(const std::string& text);

std::string partition_to_json(const Partition& partition);
Partition partition_from_json(const std::string& text);

std::string reduced_to_json(const ReducedModel& rm);
ReducedModel reduced_from_json(const std::string& text);

/// Dense matrix CSV (debug export).
std::string matrix_to_csv(const Eigen::MatrixXd& m);

/// Plot-ready CSV: t, y_0..y_{n-1}, yhat_a, yhat_b, mean_a, mean_b.
std::string response_to_csv(const ResponseRecord& record);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace netred
