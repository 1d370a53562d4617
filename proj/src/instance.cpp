#include "psgb/instance.hpp"

#include "psgb/model.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <random>
#include <vector>

namespace psgb {

namespace {

constexpr char kMagic[6] = {'P', 'S', 'G', 'B', '1', '\n'};

Matrix gaussian_design(int m, int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(m, n);
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < m; ++row) A(row, col) = gauss(rng);
  }
  for (int col = 0; col < n; ++col) {
    const double norm = A.col(col).norm();
    if (norm == 0.0) throw std::runtime_error("degenerate zero design column");
    A.col(col) /= norm;
  }
  return A;
}

ExperimentInstance assemble(Matrix A, Vector x_star, int w, double sigma,
                            double box_magnitude, std::uint64_t seed,
                            std::mt19937_64& rng) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector xi(m);
  for (int i = 0; i < m; ++i) xi[i] = gauss(rng);

  GroupPartition partition = GroupPartition::contiguous(n, w);
  const NormCounts counts = count_norms(x_star, partition);
  ExperimentInstance instance{std::move(A),
                              Vector(),
                              std::move(x_star),
                              sigma,
                              w,
                              counts.l0,
                              counts.l20,
                              BoxConstraint::uniform(n, box_magnitude),
                              std::move(partition),
                              seed};
  instance.b = instance.A * instance.x_star + sigma * xi;
  return instance;
}

}  // namespace

ExperimentInstance gen_e1(int n, int m, int w, int s, double sigma,
                          double box_magnitude, std::uint64_t seed) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("n and m must be positive");
  if (w <= 0 || n % w != 0) throw std::invalid_argument("group width must divide n");
  if (s < 0 || s > n) throw std::invalid_argument("sparsity must lie in [0, n]");
  if (s % w != 0) throw std::invalid_argument("group width must divide the sparsity");

  std::mt19937_64 rng(seed);
  Matrix A = gaussian_design(m, n, rng);

  const int q = n / w;
  const int s_g = s / w;
  std::vector<int> group_ids(q);
  for (int g = 0; g < q; ++g) group_ids[g] = g;
  for (int i = 0; i < s_g; ++i) {
    std::uniform_int_distribution<int> pick(i, q - 1);
    std::swap(group_ids[i], group_ids[pick(rng)]);
  }
  std::sort(group_ids.begin(), group_ids.begin() + s_g);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x_star = Vector::Zero(n);
  for (int i = 0; i < s_g; ++i) {
    for (int j = 0; j < w; ++j) {
      x_star[group_ids[i] * w + j] = 0.1 + (5.0 - 0.1) * unit(rng);
    }
  }

  return assemble(std::move(A), std::move(x_star), w, sigma, box_magnitude, seed, rng);
}

ExperimentInstance gen_from_vector(const Vector& x_star, int m, int w, double sigma,
                                   double box_magnitude, std::uint64_t seed) {
  const int n = static_cast<int>(x_star.size());
  if (n <= 0 || m <= 0) throw std::invalid_argument("n and m must be positive");
  if (w <= 0 || n % w != 0) throw std::invalid_argument("group width must divide n");

  std::mt19937_64 rng(seed);
  Matrix A = gaussian_design(m, n, rng);
  return assemble(std::move(A), x_star, w, sigma, box_magnitude, seed, rng);
}

namespace {

std::uint64_t swap_u64(std::uint64_t v) {
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xffu);
  return r;
}

void put_u64(std::ostream& out, std::uint64_t value) {
  if constexpr (std::endian::native == std::endian::big) value = swap_u64(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(value));
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t value = 0;
  in.read(reinterpret_cast<char*>(&value), sizeof(value));
  if constexpr (std::endian::native == std::endian::big) value = swap_u64(value);
  return value;
}

void put_f64_array(std::ostream& out, const double* data, std::size_t count) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(data), count * sizeof(double));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint64_t bits;
      std::memcpy(&bits, &data[i], sizeof(bits));
      put_u64(out, bits);
    }
  }
}

void get_f64_array(std::istream& in, double* data, std::size_t count) {
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(data), count * sizeof(double));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t bits = get_u64(in);
      std::memcpy(&data[i], &bits, sizeof(bits));
    }
  }
}

}  // namespace

void save_instance(const std::string& path, const ExperimentInstance& instance) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, sizeof(kMagic));
  put_u64(out, static_cast<std::uint64_t>(instance.A.rows()));
  put_u64(out, static_cast<std::uint64_t>(instance.A.cols()));
  put_u64(out, static_cast<std::uint64_t>(instance.group_width));
  put_u64(out, instance.seed);
  put_f64_array(out, instance.A.data(), static_cast<std::size_t>(instance.A.size()));
  put_f64_array(out, instance.b.data(), static_cast<std::size_t>(instance.b.size()));
  put_f64_array(out, instance.x_star.data(), static_cast<std::size_t>(instance.x_star.size()));
  put_f64_array(out, instance.box.lower_magnitudes().data(),
                static_cast<std::size_t>(instance.box.dimension()));
  put_f64_array(out, instance.box.upper_magnitudes().data(),
                static_cast<std::size_t>(instance.box.dimension()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

ExperimentInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path);
  const std::streamoff actual_size = in.tellg();
  in.seekg(0);

  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error(path + ": bad magic, not an instance file");
  }
  const auto m = static_cast<std::int64_t>(get_u64(in));
  const auto n = static_cast<std::int64_t>(get_u64(in));
  const auto w = static_cast<std::int64_t>(get_u64(in));
  const std::uint64_t seed = get_u64(in);
  if (m <= 0 || n <= 0 || w <= 0 || n % w != 0) {
    throw std::runtime_error(path + ": invalid header dimensions");
  }
  const std::streamoff expected_size =
      static_cast<std::streamoff>(sizeof(kMagic) + 4 * sizeof(std::uint64_t) +
                                  sizeof(double) * (m * n + m + 3 * n));
  if (actual_size != expected_size) {
    throw std::runtime_error(path + ": truncated or oversized instance file");
  }

  Matrix A(m, n);
  Vector b(m), x_star(n), l(n), u(n);
  get_f64_array(in, A.data(), static_cast<std::size_t>(A.size()));
  get_f64_array(in, b.data(), static_cast<std::size_t>(b.size()));
  get_f64_array(in, x_star.data(), static_cast<std::size_t>(x_star.size()));
  get_f64_array(in, l.data(), static_cast<std::size_t>(l.size()));
  get_f64_array(in, u.data(), static_cast<std::size_t>(u.size()));
  if (!in) throw std::runtime_error(path + ": read failed");

  GroupPartition partition = GroupPartition::contiguous(static_cast<int>(n),
                                                        static_cast<int>(w));
  const NormCounts counts = count_norms(x_star, partition);
  ExperimentInstance instance{std::move(A),
                              std::move(b),
                              std::move(x_star),
                              std::numeric_limits<double>::quiet_NaN(),
                              static_cast<int>(w),
                              counts.l0,
                              counts.l20,
                              BoxConstraint(std::move(l), std::move(u)),
                              std::move(partition),
                              seed};
  return instance;
}

Vector read_text_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  if (values.empty()) throw std::runtime_error(path + ": no values found");
  Vector result(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) result[i] = values[i];
  return result;
}

void write_text_vector(const std::string& path, const Vector& v) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v[i] << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace psgb
