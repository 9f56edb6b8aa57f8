#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "spectra.hpp"

namespace gs {

using json = nlohmann::json;

inline json group_to_json(const Group& G) {
  switch (G.family()) {
    case Family::torus: return {{"family", "torus"}, {"d", G.rank()}, {"M", G.M()}, {"N", G.N()}};
    case Family::heisenberg: return {{"family", "heisenberg"}, {"M", G.M()}, {"N", G.N()}};
    case Family::dihedral: return {{"family", "dihedral"}, {"n", G.modulus()}};
  }
  return {};
}

inline json label_to_json(const Label& l) {
  json j;
  j["family"] = family_name(l.family);
  switch (l.family) {
    case Family::torus: j["k"] = l.k; break;
    case Family::heisenberg:
      j["m"] = l.m;
      j["c"] = l.c;
      j["a_num"] = l.a;
      j["b_num"] = l.b;
      break;
    case Family::dihedral:
      j["dihedral_kind"] = dihedral_kind_name(l.dkind);
      if (l.dkind == DihedralKind::two_dim) j["index"] = l.index;
      break;
  }
  return j;
}

inline Family family_from_name(const std::string& s) {
  if (s == "torus") return Family::torus;
  if (s == "heisenberg") return Family::heisenberg;
  if (s == "dihedral") return Family::dihedral;
  throw std::invalid_argument("unknown group family '" + s + "'");
}

inline DihedralKind dihedral_kind_from_name(const std::string& s) {
  for (auto k : {DihedralKind::trivial, DihedralKind::sign, DihedralKind::alt_rot, DihedralKind::alt_rot_sign, DihedralKind::two_dim})
    if (dihedral_kind_name(k) == s) return k;
  throw std::invalid_argument("unknown dihedral_kind '" + s + "'");
}

inline Label label_from_json(const json& j) {
  Label l;
  l.family = family_from_name(j.at("family").get<std::string>());
  switch (l.family) {
    case Family::torus: l.k = j.at("k").get<std::vector<i64>>(); break;
    case Family::heisenberg:
      l.m = j.at("m").get<i64>();
      l.c = j.at("c").get<i64>();
      l.a = j.at("a_num").get<i64>();
      l.b = j.at("b_num").get<i64>();
      break;
    case Family::dihedral:
      l.dkind = dihedral_kind_from_name(j.at("dihedral_kind").get<std::string>());
      l.index = j.value("index", i64{0});
      break;
  }
  return l;
}

inline json field_to_json(const SpectralField& F) {
  json blocks = json::array();
  for (size_t p = 0; p < F.size(); ++p) {
    json data = json::array();
    for (Eigen::Index r = 0; r < F[p].rows(); ++r)
      for (Eigen::Index c = 0; c < F[p].cols(); ++c) data.push_back({F[p](r, c).real(), F[p](r, c).imag()});
    blocks.push_back({{"label", label_to_json(F.dual()[p].label())}, {"dim", F.dual().dim(p)}, {"data", data}});
  }
  return {{"group", group_to_json(F.dual().group())}, {"blocks", blocks}};
}

/// Reads blocks into a field over D; every label of D must be present exactly once.
inline SpectralField field_from_json(const json& j, std::shared_ptr<const DualSpace> D) {
  SpectralField F(D);
  std::vector<char> seen(D->size(), 0);
  for (const auto& b : j.at("blocks")) {
    const size_t p = D->index_of(label_from_json(b.at("label")));
    if (seen[p]++) throw std::invalid_argument("field_from_json: duplicate label");
    const int d = D->dim(p);
    const auto& data = b.at("data");
    if (data.size() != static_cast<size_t>(d * d)) throw std::invalid_argument("field_from_json: block size mismatch");
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) F[p](r, c) = cd(data[r * d + c][0].get<double>(), data[r * d + c][1].get<double>());
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("field_from_json: missing label");
  return F;
}

// Binary fixture, all integers and doubles little-endian:
//   "GSPF" | u32 version=1 | u32 family | u32 rank | i64 M | i64 N | u64 label_count
//   per label: u32 family | i64 m | i64 c | i64 a | i64 b | u32 dkind | i64 index | u32 klen | i64 k[klen] | u32 dim
//   then for each label in order: dim*dim (f64 re, f64 im) pairs, row-major.

namespace detail {

template <class T>
void put_le(std::ostream& os, T v) {
  unsigned char buf[sizeof(T)];
  std::uint64_t bits = 0;
  if constexpr (std::is_same_v<T, double>) {
    std::memcpy(&bits, &v, sizeof(double));
  } else {
    bits = static_cast<std::uint64_t>(v);
  }
  for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(bits >> (8 * i));
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw std::runtime_error("binary fixture: truncated input");
  std::uint64_t bits = 0;
  for (size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  if constexpr (std::is_same_v<T, double>) {
    double v;
    std::memcpy(&v, &bits, sizeof(double));
    return v;
  } else {
    return static_cast<T>(bits);
  }
}

}  // namespace detail

inline constexpr std::uint32_t fixture_version = 1;

inline void write_fixture(std::ostream& os, const SpectralField& F) {
  const Group& G = F.dual().group();
  os.write("GSPF", 4);
  detail::put_le<std::uint32_t>(os, fixture_version);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(G.family()));
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(G.rank()));
  detail::put_le<std::int64_t>(os, G.M());
  detail::put_le<std::int64_t>(os, G.family() == Family::dihedral ? G.modulus() : G.N());
  detail::put_le<std::uint64_t>(os, F.size());
  for (size_t p = 0; p < F.size(); ++p) {
    const Label& l = F.dual()[p].label();
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(l.family));
    detail::put_le<std::int64_t>(os, l.m);
    detail::put_le<std::int64_t>(os, l.c);
    detail::put_le<std::int64_t>(os, l.a);
    detail::put_le<std::int64_t>(os, l.b);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(l.dkind));
    detail::put_le<std::int64_t>(os, l.index);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(l.k.size()));
    for (i64 v : l.k) detail::put_le<std::int64_t>(os, v);
    detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(F.dual().dim(p)));
  }
  for (size_t p = 0; p < F.size(); ++p)
    for (Eigen::Index r = 0; r < F[p].rows(); ++r)
      for (Eigen::Index c = 0; c < F[p].cols(); ++c) {
        detail::put_le<double>(os, F[p](r, c).real());
        detail::put_le<double>(os, F[p](r, c).imag());
      }
}

inline SpectralField read_fixture(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "GSPF", 4) != 0) throw std::runtime_error("binary fixture: bad magic");
  if (detail::get_le<std::uint32_t>(is) != fixture_version) throw std::runtime_error("binary fixture: unsupported version");
  const auto fam = static_cast<Family>(detail::get_le<std::uint32_t>(is));
  const auto rank = static_cast<int>(detail::get_le<std::uint32_t>(is));
  const i64 M = detail::get_le<std::int64_t>(is);
  const i64 N = detail::get_le<std::int64_t>(is);
  const Group G = fam == Family::torus ? Group::torus(rank, M, N) : fam == Family::heisenberg ? Group::heisenberg(M, N) : Group::dihedral(N);
  auto D = std::make_shared<const DualSpace>(DualSpace::enumerate(G));
  const auto count = detail::get_le<std::uint64_t>(is);
  if (count != D->size()) throw std::runtime_error("binary fixture: label count does not match the dual");
  std::vector<size_t> order;
  for (u64 i = 0; i < count; ++i) {
    Label l;
    l.family = static_cast<Family>(detail::get_le<std::uint32_t>(is));
    l.m = detail::get_le<std::int64_t>(is);
    l.c = detail::get_le<std::int64_t>(is);
    l.a = detail::get_le<std::int64_t>(is);
    l.b = detail::get_le<std::int64_t>(is);
    l.dkind = static_cast<DihedralKind>(detail::get_le<std::uint32_t>(is));
    l.index = detail::get_le<std::int64_t>(is);
    const auto klen = detail::get_le<std::uint32_t>(is);
    for (std::uint32_t t = 0; t < klen; ++t) l.k.push_back(detail::get_le<std::int64_t>(is));
    const auto dim = detail::get_le<std::uint32_t>(is);
    const size_t p = D->index_of(l);
    if (static_cast<int>(dim) != D->dim(p)) throw std::runtime_error("binary fixture: dimension mismatch");
    order.push_back(p);
  }
  SpectralField F(D);
  for (size_t p : order)
    for (Eigen::Index r = 0; r < F[p].rows(); ++r)
      for (Eigen::Index c = 0; c < F[p].cols(); ++c) {
        const double re = detail::get_le<double>(is);
        const double im = detail::get_le<double>(is);
        F[p](r, c) = cd(re, im);
      }
  return F;
}

}  // namespace gs
