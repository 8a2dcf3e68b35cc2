#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wiretap/matrix_core.hpp"

namespace wiretap {

// One problem instance: K user channels H_k (n_k x n_t), one eavesdropper
// channel G (n_e x n_t) and a total power budget P. Immutable.
class ChannelSet {
 public:
  ChannelSet(std::vector<ComplexMatrix> users, ComplexMatrix eavesdropper, double power);

  int num_users() const { return static_cast<int>(users_.size()); }
  Eigen::Index tx_antennas() const { return eavesdropper_.cols(); }
  Eigen::Index user_antennas(int user) const { return users_.at(user).rows(); }
  Eigen::Index eve_antennas() const { return eavesdropper_.rows(); }

  const ComplexMatrix& user(int k) const { return users_.at(k); }
  const std::vector<ComplexMatrix>& users() const { return users_; }
  const ComplexMatrix& eavesdropper() const { return eavesdropper_; }
  double power() const { return power_; }

  // Same users and power with a different eavesdropper channel.
  ChannelSet with_eavesdropper(ComplexMatrix g) const;

 private:
  std::vector<ComplexMatrix> users_;
  ComplexMatrix eavesdropper_;
  double power_;
};

// Nonnegative user weights, normalized to sum to one on construction.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);

  static WeightVector uniform(int k);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int k) const { return weights_.at(k); }
  const std::vector<double>& values() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// JSON channel file:
//   { "power": P, "users": [ { "H": [[[re,im],...],...] }, ... ],
//     "eavesdropper": [[[re,im],...],...] }
ChannelSet load_channel_set(std::istream& in);
ChannelSet load_channel_set(const std::filesystem::path& path);

// Numbers are written with 17 significant digits so a load reproduces
// every entry exactly.
void save_channel_set(std::ostream& out, const ChannelSet& ch);
void save_channel_set(const std::filesystem::path& path, const ChannelSet& ch);
std::string to_json_text(const ChannelSet& ch);

// Entries i.i.d. CN(0, 1): real and imaginary parts each N(0, 1/2).
// Draw order: users in index order, each row-major, then the eavesdropper.
ChannelSet sample_channel_set(std::uint64_t seed, int num_users, Eigen::Index tx_antennas,
                              const std::vector<Eigen::Index>& user_antennas, Eigen::Index eve_antennas,
                              double power);

}  // namespace wiretap
