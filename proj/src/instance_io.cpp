#include <array>
#include <cstring>
#include <fstream>

#include "rotamp/error.hpp"
#include "rotamp/model.hpp"

namespace rotamp {

namespace {

constexpr std::array<char, 8> kMagic = {'R', 'T', 'M', 'P', 'I', 'N', 'S', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("instance file truncated");
  return v;
}

void put_vec(std::ofstream& out, const Eigen::VectorXd& v) {
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
}

Eigen::VectorXd get_vec(std::ifstream& in, Eigen::Index size) {
  Eigen::VectorXd v(size);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(size * sizeof(double)));
  if (!in) throw std::runtime_error("instance file truncated");
  return v;
}

}  // namespace

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic.data(), kMagic.size());
  put(out, kVersion);
  put(out, std::uint32_t{0});
  put(out, static_cast<std::uint64_t>(inst.n));
  put(out, static_cast<std::uint64_t>(inst.m));
  put(out, inst.seed);
  put_vec(out, inst.d_diag);
  put_vec(out, inst.dsq);
  put_vec(out, inst.O.signs());
  const auto& v = inst.O.reflectors();
  for (Eigen::Index c = 0; c < v.cols(); ++c) put_vec(out, v.col(c).tail(inst.n - c));
  put_vec(out, inst.beta_star);
  put_vec(out, inst.eps);
  put_vec(out, inst.y);
  if (!out) throw std::runtime_error("write failed for " + path);
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error(path + " is not an instance file");
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) throw std::runtime_error("unsupported instance file version " + std::to_string(version));
  get<std::uint32_t>(in);
  Instance inst;
  inst.n = static_cast<int>(get<std::uint64_t>(in));
  inst.m = static_cast<int>(get<std::uint64_t>(in));
  inst.seed = get<std::uint64_t>(in);
  if (inst.n < 1 || inst.m < 1) throw std::runtime_error("instance file has invalid dimensions");
  const int n = inst.n;
  inst.d_diag = get_vec(in, std::min(inst.n, inst.m));
  inst.dsq = get_vec(in, n);
  Eigen::VectorXd signs = get_vec(in, n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, std::max(n - 1, 0));
  for (int c = 0; c + 1 < n; ++c) v.col(c).tail(n - c) = get_vec(in, n - c);
  inst.O = HaarOrthogonal::from_factors(std::move(v), std::move(signs));
  inst.beta_star = get_vec(in, n);
  inst.eps = get_vec(in, inst.m);
  inst.y = get_vec(in, inst.m);
  return inst;
}

}  // namespace rotamp
