#include <fstream>

#include <json.hpp>

#include "aggmdp/aggregation.hpp"
#include "aggmdp/mdp.hpp"

namespace aggmdp {

namespace {

nlohmann::json read_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string(what) + ": cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string(what) + ": " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const nlohmann::json& j, const std::string& path, const char* what) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(std::string(what) + ": cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(std::string(what) + ": write failed for " + path);
}

}  // namespace

Mdp load_mdp_json(const std::string& path) {
  const nlohmann::json j = read_json_file(path, "load_mdp_json");
  Mdp mdp;
  try {
    mdp.gamma = j.at("gamma").get<double>();
    const auto& rho = j.at("rho");
    const auto& rewards = j.at("rewards");
    const auto& transitions = j.at("transitions");
    mdp.num_states = static_cast<int>(rewards.size());
    if (mdp.num_states == 0) throw std::invalid_argument("mdp file: empty rewards table");
    mdp.num_actions = static_cast<int>(rewards.at(0).size());
    mdp.rewards.resize(mdp.num_states, mdp.num_actions);
    for (int s = 0; s < mdp.num_states; ++s) {
      if (static_cast<int>(rewards.at(s).size()) != mdp.num_actions)
        throw std::invalid_argument("mdp file: rewards row " + std::to_string(s) +
                                    " has inconsistent length");
      for (int a = 0; a < mdp.num_actions; ++a) mdp.rewards(s, a) = rewards.at(s).at(a);
    }
    mdp.transitions.assign(mdp.num_actions,
                           Eigen::MatrixXd::Zero(mdp.num_states, mdp.num_states));
    if (static_cast<int>(transitions.size()) != mdp.num_states)
      throw std::invalid_argument("mdp file: transitions must have |S| outer entries");
    for (int s = 0; s < mdp.num_states; ++s) {
      if (static_cast<int>(transitions.at(s).size()) != mdp.num_actions)
        throw std::invalid_argument("mdp file: transitions[" + std::to_string(s) +
                                    "] must have |A| entries");
      for (int a = 0; a < mdp.num_actions; ++a) {
        const auto& row = transitions.at(s).at(a);
        if (static_cast<int>(row.size()) != mdp.num_states)
          throw std::invalid_argument("mdp file: transitions[" + std::to_string(s) + "][" +
                                      std::to_string(a) + "] must have |S| entries");
        for (int sp = 0; sp < mdp.num_states; ++sp) mdp.transitions[a](s, sp) = row.at(sp);
      }
    }
    if (static_cast<int>(rho.size()) != mdp.num_states)
      throw std::invalid_argument("mdp file: rho must have |S| entries");
    mdp.rho.resize(mdp.num_states);
    for (int s = 0; s < mdp.num_states; ++s) mdp.rho(s) = rho.at(s);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("mdp file " + path + ": " + e.what());
  }
  mdp.validate();
  return mdp;
}

void save_mdp_json(const Mdp& mdp, const std::string& path) {
  nlohmann::json j;
  j["gamma"] = mdp.gamma;
  j["rho"] = std::vector<double>(mdp.rho.data(), mdp.rho.data() + mdp.num_states);
  auto rewards = nlohmann::json::array();
  for (int s = 0; s < mdp.num_states; ++s) {
    auto row = nlohmann::json::array();
    for (int a = 0; a < mdp.num_actions; ++a) row.push_back(mdp.rewards(s, a));
    rewards.push_back(std::move(row));
  }
  j["rewards"] = std::move(rewards);
  auto transitions = nlohmann::json::array();
  for (int s = 0; s < mdp.num_states; ++s) {
    auto per_action = nlohmann::json::array();
    for (int a = 0; a < mdp.num_actions; ++a) {
      auto row = nlohmann::json::array();
      for (int sp = 0; sp < mdp.num_states; ++sp) row.push_back(mdp.transitions[a](s, sp));
      per_action.push_back(std::move(row));
    }
    transitions.push_back(std::move(per_action));
  }
  j["transitions"] = std::move(transitions);
  write_json_file(j, path, "save_mdp_json");
}

Aggregation load_aggregation_json(const std::string& path) {
  const nlohmann::json j = read_json_file(path, "load_aggregation_json");
  try {
    const int m = j.at("num_segments").get<int>();
    std::vector<int> phi = j.at("phi").get<std::vector<int>>();
    return Aggregation::from_phi(m, std::move(phi));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("aggregation file " + path + ": " + e.what());
  }
}

void save_aggregation_json(const Aggregation& agg, const std::string& path) {
  nlohmann::json j;
  j["num_segments"] = agg.num_segments;
  j["phi"] = agg.phi;
  write_json_file(j, path, "save_aggregation_json");
}

}  // namespace aggmdp
