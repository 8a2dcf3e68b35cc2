#include "wiretap/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "wiretap/errors.hpp"
#include "wiretap/random.hpp"

namespace wiretap {

ChannelSet::ChannelSet(std::vector<ComplexMatrix> users, ComplexMatrix eavesdropper, double power)
    : users_(std::move(users)), eavesdropper_(std::move(eavesdropper)), power_(power) {
  if (users_.empty()) throw Error(ErrorKind::kInvalidArgument, "channel set needs at least one user");
  if (!(power_ > 0.0) || !std::isfinite(power_)) {
    throw Error(ErrorKind::kInvalidPower, "power must be positive and finite");
  }
  const Eigen::Index nt = eavesdropper_.cols();
  if (nt <= 0 || eavesdropper_.rows() <= 0) {
    throw Error(ErrorKind::kDimensionMismatch, "eavesdropper channel must be non-empty");
  }
  for (std::size_t k = 0; k < users_.size(); ++k) {
    if (users_[k].rows() <= 0) {
      throw Error(ErrorKind::kDimensionMismatch, "user " + std::to_string(k + 1) + " has no antennas");
    }
    if (users_[k].cols() != nt) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "user " + std::to_string(k + 1) + " has " + std::to_string(users_[k].cols()) +
                      " columns, eavesdropper has " + std::to_string(nt));
    }
  }
}

ChannelSet ChannelSet::with_eavesdropper(ComplexMatrix g) const { return ChannelSet(users_, std::move(g), power_); }

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorKind::kInvalidArgument, "weight vector is empty");
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::kInvalidArgument, "weights must be nonnegative");
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(total > 0.0)) throw Error(ErrorKind::kInvalidArgument, "weights must not all be zero");
  for (double& w : weights_) w /= total;
}

WeightVector WeightVector::uniform(int k) { return WeightVector(std::vector<double>(static_cast<std::size_t>(k), 1.0)); }

namespace {

using nlohmann::json;

ComplexMatrix parse_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::kParseError, what + ": expected a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw Error(ErrorKind::kParseError, what + ": expected rows of entries");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) throw Error(ErrorKind::kParseError, what + ": row is not a list");
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorKind::kDimensionMismatch, what + ": ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw Error(ErrorKind::kParseError, what + ": entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

void write_number(std::ostream& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void write_matrix(std::ostream& out, const ComplexMatrix& m, const std::string& indent) {
  out << "[\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << indent << "  [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ", ";
      out << '[';
      write_number(out, m(r, c).real());
      out << ", ";
      write_number(out, m(r, c).imag());
      out << ']';
    }
    out << (r + 1 < m.rows() ? "],\n" : "]\n");
  }
  out << indent << ']';
}

}  // namespace

ChannelSet load_channel_set(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParseError, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::kParseError, "channel file must be a JSON object");
  if (!doc.contains("power") || !doc["power"].is_number()) throw Error(ErrorKind::kParseError, "missing numeric \"power\"");
  if (!doc.contains("users") || !doc["users"].is_array()) throw Error(ErrorKind::kParseError, "missing \"users\" list");
  if (!doc.contains("eavesdropper")) throw Error(ErrorKind::kParseError, "missing \"eavesdropper\"");

  std::vector<ComplexMatrix> users;
  for (std::size_t k = 0; k < doc["users"].size(); ++k) {
    const json& u = doc["users"][k];
    if (!u.is_object() || !u.contains("H")) throw Error(ErrorKind::kParseError, "user entry needs an \"H\" matrix");
    users.push_back(parse_matrix(u["H"], "users[" + std::to_string(k) + "].H"));
  }
  ComplexMatrix g = parse_matrix(doc["eavesdropper"], "eavesdropper");
  return ChannelSet(std::move(users), std::move(g), doc["power"].get<double>());
}

ChannelSet load_channel_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParseError, "cannot open " + path.string());
  return load_channel_set(in);
}

void save_channel_set(std::ostream& out, const ChannelSet& ch) {
  out << "{\n  \"power\": ";
  write_number(out, ch.power());
  out << ",\n  \"users\": [\n";
  for (int k = 0; k < ch.num_users(); ++k) {
    out << "    { \"H\": ";
    write_matrix(out, ch.user(k), "    ");
    out << (k + 1 < ch.num_users() ? " },\n" : " }\n");
  }
  out << "  ],\n  \"eavesdropper\": ";
  write_matrix(out, ch.eavesdropper(), "  ");
  out << "\n}\n";
}

void save_channel_set(const std::filesystem::path& path, const ChannelSet& ch) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  save_channel_set(out, ch);
}

std::string to_json_text(const ChannelSet& ch) {
  std::ostringstream os;
  save_channel_set(os, ch);
  return os.str();
}

ChannelSet sample_channel_set(std::uint64_t seed, int num_users, Eigen::Index tx_antennas,
                              const std::vector<Eigen::Index>& user_antennas, Eigen::Index eve_antennas,
                              double power) {
  if (num_users < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one user");
  if (static_cast<int>(user_antennas.size()) != num_users) {
    throw Error(ErrorKind::kLengthMismatch, "one antenna count per user required");
  }
  if (tx_antennas < 1 || eve_antennas < 1) throw Error(ErrorKind::kInvalidArgument, "antenna counts must be positive");
  PortableRng rng(seed);
  std::vector<ComplexMatrix> users;
  users.reserve(user_antennas.size());
  for (Eigen::Index nk : user_antennas) {
    if (nk < 1) throw Error(ErrorKind::kInvalidArgument, "antenna counts must be positive");
    users.push_back(rng.complex_gaussian(nk, tx_antennas));
  }
  ComplexMatrix g = rng.complex_gaussian(eve_antennas, tx_antennas);
  return ChannelSet(std::move(users), std::move(g), power);
}

}  // namespace wiretap
