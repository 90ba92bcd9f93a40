#include "qlc/store.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qlc {

namespace {

constexpr std::string_view kMagic = "QLCSTORE";
constexpr std::string_view kFormat = "qlc-orbit-store";

template <class T>
void put_be(std::string& out, T v) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((v >> shift) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <class T>
  T be() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      v = static_cast<T>((v << 8) | static_cast<std::uint8_t>(bytes_[pos_++]));
    return v;
  }
  std::string_view take(std::size_t len) {
    need(len);
    auto s = bytes_.substr(pos_, len);
    pos_ += len;
    return s;
  }
  CodeBits code() { return get_code(bytes_, pos_); }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t len) const {
    if (bytes_.size() - pos_ < len) throw StoreError("truncated orbit store");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

nlohmann::json row_json(const OrbitRecord& r) {
  nlohmann::json j;
  if (r.observables) {
    const auto& o = *r.observables;
    j["observables"] = {{"chi_og", o.chi_og},         {"self_loops", o.self_loops},
                        {"ln_loops", o.ln_loops},     {"chi_i", o.chi_i},
                        {"density", o.density},       {"aspl", o.aspl},
                        {"diameter", o.diameter},     {"deg_g_min", o.deg_g_min},
                        {"deg_og_max", o.deg_og_max}, {"aspl_exact", o.aspl_exact},
                        {"diameter_exact", o.diameter_exact}};
  } else {
    j["observables"] = nullptr;
  }
  if (r.schmidt)
    j["schmidt"] = {r.schmidt->lower, r.schmidt->upper};
  else
    j["schmidt"] = nullptr;
  return j;
}

void read_row_json(OrbitRecord& r, const nlohmann::json& j) {
  if (const auto& o = j.at("observables"); !o.is_null()) {
    ObservableRow row;
    row.chi_og = o.at("chi_og").get<unsigned>();
    row.self_loops = o.at("self_loops").get<std::uint64_t>();
    row.ln_loops = o.at("ln_loops").get<double>();
    row.chi_i = o.at("chi_i").get<unsigned>();
    row.density = o.at("density").get<double>();
    row.aspl = o.at("aspl").get<double>();
    row.diameter = o.at("diameter").get<unsigned>();
    row.deg_g_min = o.at("deg_g_min").get<unsigned>();
    row.deg_og_max = o.at("deg_og_max").get<unsigned>();
    row.aspl_exact = o.at("aspl_exact").get<bool>();
    row.diameter_exact = o.at("diameter_exact").get<bool>();
    r.observables = row;
  }
  if (const auto& s = j.at("schmidt"); !s.is_null())
    r.schmidt = SchmidtBounds{s.at(0).get<unsigned>(), s.at(1).get<unsigned>()};
}

void put_block(std::string& out, const OrbitRecord& r, bool edges) {
  std::string b;
  put_be<std::uint32_t>(b, r.index);
  put_be<std::uint8_t>(b, static_cast<std::uint8_t>(r.n));
  put_be<std::uint32_t>(b, static_cast<std::uint32_t>(r.og.members.size()));
  for (const auto& c : r.og.members) put_code(b, c.bits);
  for (auto v : r.og.loop_counts) put_be<std::uint16_t>(b, v);
  for (auto v : r.og.identity_counts) put_be<std::uint16_t>(b, v);
  put_code(b, r.representative_code.bits);
  put_code(b, r.representative_order_bits);
  put_be<std::uint16_t>(b, static_cast<std::uint16_t>(r.representative_edges));
  if (edges) {
    if (!has_adjacency(r)) throw StoreError("orbit " + std::to_string(r.index) + " has no adjacency to store");
    const Csr& g = r.og.adjacency;
    put_be<std::uint64_t>(b, g.edge_count());
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
      for (const std::uint32_t* v = g.begin(u); v != g.end(u); ++v)
        if (u < *v) {
          put_be<std::uint32_t>(b, static_cast<std::uint32_t>(u));
          put_be<std::uint32_t>(b, *v);
        }
  }
  const std::string row = row_json(r).dump();
  put_be<std::uint32_t>(b, static_cast<std::uint32_t>(row.size()));
  b += row;
  put_be<std::uint32_t>(out, static_cast<std::uint32_t>(b.size()));
  out += b;
}

OrbitRecord get_block(std::string_view payload, unsigned d, bool edges) {
  Reader in(payload);
  OrbitRecord r;
  r.d = d;
  r.index = in.be<std::uint32_t>();
  r.n = in.be<std::uint8_t>();
  if (r.n < 1 || r.n > kMaxVertices) throw StoreError("orbit block with invalid vertex count");
  const std::uint32_t count = in.be<std::uint32_t>();
  r.og.members.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    GraphCode c{in.code(), static_cast<std::uint8_t>(r.n), static_cast<std::uint8_t>(d)};
    if (i > 0 && !(r.og.members.back() < c)) throw StoreError("orbit members are not sorted");
    r.og.members.push_back(c);
  }
  r.og.loop_counts.resize(count);
  r.og.identity_counts.resize(count);
  for (auto& v : r.og.loop_counts) v = in.be<std::uint16_t>();
  for (auto& v : r.og.identity_counts) v = in.be<std::uint16_t>();
  r.representative_code = GraphCode{in.code(), static_cast<std::uint8_t>(r.n), static_cast<std::uint8_t>(d)};
  r.representative_order_bits = in.code();
  r.representative_edges = in.be<std::uint16_t>();
  try {
    r.representative = decode(r.representative_code);
  } catch (const std::exception& e) {
    throw StoreError(std::string("undecodable representative: ") + e.what());
  }
  if (edges) {
    const auto m = in.be<std::uint64_t>();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    pairs.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
      const auto u = in.be<std::uint32_t>();
      const auto v = in.be<std::uint32_t>();
      if (u >= count || v >= count) throw StoreError("orbit edge out of range");
      pairs.emplace_back(u, v);
    }
    r.og.adjacency = csr_from_pairs(count, std::move(pairs));
  }
  const auto len = in.be<std::uint32_t>();
  const auto text = in.take(len);
  try {
    read_row_json(r, nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(std::string("bad orbit row: ") + e.what());
  }
  if (!in.done()) throw StoreError("trailing bytes in orbit block");
  return r;
}

}  // namespace

std::string op_policy_fingerprint(unsigned d) {
  return "ops=scale{2..d-1}+complement{1..d-1};d=" + std::to_string(d) +
         ";canon=min-rowmajor-msb;order=n,edges,weight,colex;loops=per-vertex-u16";
}

void put_code(std::string& out, CodeBits v) {
  unsigned len = 0;
  for (CodeBits t = v; t != 0; t >>= 8) ++len;
  out.push_back(static_cast<char>(len));
  for (int i = static_cast<int>(len) - 1; i >= 0; --i)
    out.push_back(static_cast<char>(static_cast<std::uint8_t>(v >> (8 * i))));
}

CodeBits get_code(std::string_view bytes, std::size_t& pos) {
  if (pos >= bytes.size()) throw StoreError("truncated code");
  const auto len = static_cast<std::uint8_t>(bytes[pos++]);
  if (len > 16 || bytes.size() - pos < len) throw StoreError("bad code length");
  if (len > 0 && bytes[pos] == 0) throw StoreError("code with a leading zero byte");
  CodeBits v = 0;
  for (unsigned i = 0; i < len; ++i) v = (v << 8) | static_cast<std::uint8_t>(bytes[pos++]);
  return v;
}

std::string serialize_store(const OrbitStore& store) {
  const StoreHeader& h = store.header;
  nlohmann::json j = {{"format", kFormat},     {"version", h.version},     {"n_min", h.n_min},
                      {"n", h.n},              {"d", h.d},                 {"op_policy", h.op_policy},
                      {"has_edges", h.has_edges}, {"orbits", store.orbits.size()}};
  if (!h.observable_config.empty())
    j["observable_config"] = nlohmann::json::parse(h.observable_config);
  else
    j["observable_config"] = nullptr;
  const std::string text = j.dump();
  std::string out(kMagic);
  put_be<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  put_be<std::uint32_t>(out, static_cast<std::uint32_t>(store.orbits.size()));
  for (const auto& r : store.orbits) put_block(out, r, h.has_edges);
  return out;
}

OrbitStore parse_store(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(kMagic.size()) != kMagic) throw StoreError("not an orbit store (bad magic)");
  OrbitStore s;
  std::size_t declared = 0;
  try {
    const auto j = nlohmann::json::parse(in.take(in.be<std::uint32_t>()));
    if (j.at("format").get<std::string>() != kFormat) throw StoreError("unknown store format");
    s.header.version = j.at("version").get<unsigned>();
    if (s.header.version != 1) throw StoreError("unsupported store version " + std::to_string(s.header.version));
    s.header.n_min = j.at("n_min").get<unsigned>();
    s.header.n = j.at("n").get<unsigned>();
    s.header.d = j.at("d").get<unsigned>();
    s.header.op_policy = j.at("op_policy").get<std::string>();
    s.header.has_edges = j.at("has_edges").get<bool>();
    declared = j.at("orbits").get<std::size_t>();
    if (const auto& c = j.at("observable_config"); !c.is_null()) s.header.observable_config = c.dump();
  } catch (const nlohmann::json::exception& e) {
    throw StoreError(std::string("bad store header: ") + e.what());
  }
  if (!is_prime(s.header.d)) throw StoreError("store dimension is not prime");
  const auto count = in.be<std::uint32_t>();
  if (count != declared) throw StoreError("orbit count disagrees with header");
  s.orbits.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto len = in.be<std::uint32_t>();
    s.orbits.push_back(get_block(in.take(len), s.header.d, s.header.has_edges));
  }
  if (!in.done()) throw StoreError("trailing bytes after the last orbit");
  return s;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw StoreError("cannot open " + tmp.string() + " for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) throw StoreError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw StoreError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw StoreError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_store(const std::filesystem::path& path, const OrbitStore& store) {
  write_file_atomic(path, serialize_store(store));
}

OrbitStore read_store(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw StoreError("store not found: " + path.string());
  OrbitStore s = parse_store(read_file(path));
  if (s.header.op_policy != op_policy_fingerprint(s.header.d))
    throw StoreError("store op-policy fingerprint does not match this build: " + s.header.op_policy);
  return s;
}

bool has_adjacency(const OrbitRecord& r) {
  return r.og.adjacency.vertex_count() == r.og.members.size();
}

void ensure_adjacency(OrbitRecord& r, unsigned jobs) {
  if (has_adjacency(r)) return;
  OrbitGraph og = orbit_graph_from_members(r.og.members, jobs);
  if (og.loop_counts != r.og.loop_counts || og.identity_counts != r.og.identity_counts)
    throw StoreError("stored loop counts disagree with the members of orbit " + std::to_string(r.index));
  r.og = std::move(og);
}

}  // namespace qlc
