#include "aggmdp/random_instances.hpp"

#include <cmath>

namespace aggmdp {

double uniform_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_double_positive(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

int uniform_int(int n, std::mt19937_64& rng) {
  return static_cast<int>(uniform_double(rng) * n) % n;  // n is small everywhere here
}

long geometric_failures(double gamma, std::mt19937_64& rng) {
  // P(t) = (1-gamma) gamma^t; equivalently t = floor(log u / log gamma), u in (0,1].
  const double u = uniform_double_positive(rng);
  if (u >= 1.0) return 0;
  const double t = std::floor(std::log(u) / std::log(gamma));
  return t < 0 ? 0 : static_cast<long>(t);
}

int sample_index(const Eigen::Ref<const Eigen::VectorXd>& probs, std::mt19937_64& rng) {
  const double u = uniform_double(rng);
  double acc = 0.0;
  const int n = static_cast<int>(probs.size());
  for (int i = 0; i < n; ++i) {
    acc += probs(i);
    if (u < acc) return i;
  }
  return n - 1;
}

Eigen::VectorXd dirichlet_uniform(int k, std::mt19937_64& rng) {
  Eigen::VectorXd e(k);
  for (int i = 0; i < k; ++i) e(i) = -std::log(uniform_double_positive(rng));
  return e / e.sum();
}

Mdp random_mdp(int num_states, int num_actions, double gamma, std::mt19937_64& rng) {
  Mdp mdp;
  mdp.num_states = num_states;
  mdp.num_actions = num_actions;
  mdp.gamma = gamma;
  mdp.rewards.resize(num_states, num_actions);
  for (int s = 0; s < num_states; ++s)
    for (int a = 0; a < num_actions; ++a) mdp.rewards(s, a) = uniform_double(rng);
  mdp.transitions.assign(num_actions, Eigen::MatrixXd(num_states, num_states));
  for (int a = 0; a < num_actions; ++a)
    for (int s = 0; s < num_states; ++s)
      mdp.transitions[a].row(s) = dirichlet_uniform(num_states, rng).transpose();
  // keep every state reachable at time zero: blend with the uniform distribution
  mdp.rho = 0.5 * dirichlet_uniform(num_states, rng) +
            Eigen::VectorXd::Constant(num_states, 0.5 / num_states);
  return mdp;
}

Aggregation random_aggregation(int num_states, int num_segments, std::mt19937_64& rng) {
  if (num_segments > num_states)
    throw std::invalid_argument("random_aggregation: more segments than states");
  std::vector<int> phi(num_states, -1);
  // one seed state per segment, then uniform assignment
  std::vector<int> order(num_states);
  for (int s = 0; s < num_states; ++s) order[s] = s;
  for (int s = num_states - 1; s > 0; --s) std::swap(order[s], order[uniform_int(s + 1, rng)]);
  for (int i = 0; i < num_segments; ++i) phi[order[i]] = i;
  for (int s = 0; s < num_states; ++s)
    if (phi[s] < 0) phi[s] = uniform_int(num_segments, rng);
  return Aggregation::from_phi(num_segments, std::move(phi));
}

TabularPolicy random_policy(int num_states, int num_actions, std::mt19937_64& rng) {
  TabularPolicy pi;
  pi.probs.resize(num_states, num_actions);
  for (int s = 0; s < num_states; ++s)
    pi.probs.row(s) = dirichlet_uniform(num_actions, rng).transpose();
  return pi;
}

AggregatedPolicy random_aggregated_policy(int num_segments, int num_actions,
                                          std::mt19937_64& rng) {
  AggregatedPolicy theta;
  theta.theta.resize(num_segments, num_actions);
  for (int i = 0; i < num_segments; ++i)
    theta.theta.row(i) = dirichlet_uniform(num_actions, rng).transpose();
  return theta;
}

}  // namespace aggmdp
