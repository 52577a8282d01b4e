#include "degdet/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "degdet/errors.hpp"

namespace degdet {

namespace {

using json = nlohmann::json;

json meta_json(const std::map<std::string, std::string>& meta) {
  json out = json::object();
  for (const auto& [k, v] : meta) out[k] = v;
  return out;
}

json matrix_json(const FieldMatrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

/// rows x cols integer matrix, row-major.
std::vector<std::int64_t> int_matrix(const json& j, Index rows, Index cols, const char* what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw FormatError(std::string(what) + " must have " + std::to_string(rows) + " rows");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(rows * cols));
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw FormatError(std::string(what) + " must have " + std::to_string(cols) + " columns");
    for (const auto& v : row) out.push_back(integer(v, what));
  }
  return out;
}

std::vector<std::int64_t> int_list(const json& j, std::size_t len, const char* what) {
  if (!j.is_array() || j.size() != len) throw FormatError(std::string(what) + " must have " + std::to_string(len) + " entries");
  std::vector<std::int64_t> out;
  for (const auto& v : j) out.push_back(integer(v, what));
  return out;
}

std::map<std::string, std::string> read_meta(const json& j, std::int64_t* entry_bound) {
  std::map<std::string, std::string> out;
  if (!j.contains("meta")) return out;
  const json& meta = j.at("meta");
  if (!meta.is_object()) throw FormatError("meta must be an object");
  for (const auto& [k, v] : meta.items()) {
    if (entry_bound && k == "D") {
      *entry_bound = integer(v, "meta.D");
      continue;
    }
    out[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

Index dimension(const json& j) {
  const std::int64_t n = integer(field(j, "n"), "n");
  if (n < 1) throw FormatError("n must be positive");
  return n;
}

}  // namespace

std::string save(const Instance& inst) {
  json j;
  j["version"] = kSchemaVersion;
  j["prime"] = inst.modulus.value();
  j["n"] = inst.n;
  j["m"] = inst.m();
  json mats = json::array();
  for (const auto& a : inst.mats) mats.push_back(matrix_json(a));
  j["mats"] = std::move(mats);
  j["costs"] = inst.costs;
  j["meta"] = meta_json(inst.meta);
  return dump(j);
}

std::string save(const IntegerInstance& inst) {
  json j;
  j["version"] = kSchemaVersion;
  j["n"] = inst.n;
  j["m"] = inst.m();
  json mats = json::array();
  for (const auto& a : inst.mats) {
    json rows = json::array();
    for (Index i = 0; i < inst.n; ++i)
      rows.push_back(std::vector<std::int64_t>(a.begin() + i * inst.n, a.begin() + (i + 1) * inst.n));
    mats.push_back(std::move(rows));
  }
  j["mats"] = std::move(mats);
  j["costs"] = inst.costs;
  j["meta"] = meta_json(inst.meta);
  if (inst.entry_bound > 0) j["meta"]["D"] = inst.entry_bound;
  return dump(j);
}

std::string save(const PartitionedInstance& inst) {
  json j;
  j["version"] = kSchemaVersion;
  j["prime"] = inst.modulus.value();
  j["n"] = inst.n;
  FieldMatrix whole(inst.modulus, 2 * inst.n, 2 * inst.n);
  json costs = json::array();
  for (Index i = 0; i < inst.n; ++i) {
    json row = json::array();
    for (Index jj = 0; jj < inst.n; ++jj) {
      whole.set_block(2 * i, 2 * jj, inst.block(i, jj));
      row.push_back(inst.cost(i, jj));
    }
    costs.push_back(std::move(row));
  }
  j["blocks"] = matrix_json(whole);
  j["block_costs"] = std::move(costs);
  j["meta"] = meta_json(inst.meta);
  return dump(j);
}

std::string save(const AnyInstance& inst) {
  return std::visit([](const auto& x) { return save(x); }, inst);
}

AnyInstance load(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("instance file must be a JSON object");
  const std::int64_t version = integer(field(j, "version"), "version");
  if (version != kSchemaVersion)
    throw VersionMismatch("schema version " + std::to_string(version) + ", expected " + std::to_string(kSchemaVersion));
  const Index n = dimension(j);

  std::optional<PrimeModulus> mod;
  if (j.contains("prime")) {
    const json& p = j.at("prime");
    if (!p.is_number_unsigned() && !p.is_number_integer()) throw FormatError("prime must be an integer");
    if (p.is_number_integer() && p.get<std::int64_t>() < 2) throw NonPrime("modulus " + p.dump() + " is not prime");
    mod = PrimeModulus(p.get<std::uint64_t>());
  }

  if (j.contains("blocks")) {
    if (!mod) throw FormatError("partitioned instance needs a prime");
    PartitionedInstance out;
    out.modulus = *mod;
    out.n = n;
    const FieldMatrix whole = FieldMatrix::from_integers(*mod, 2 * n, 2 * n, int_matrix(j.at("blocks"), 2 * n, 2 * n, "blocks"));
    out.costs = int_matrix(field(j, "block_costs"), n, n, "block_costs");
    for (Index i = 0; i < n; ++i)
      for (Index jj = 0; jj < n; ++jj) out.blocks.push_back(whole.block(2 * i, 2 * jj, 2, 2));
    out.meta = read_meta(j, nullptr);
    out.validate();
    return out;
  }

  const std::int64_t m = integer(field(j, "m"), "m");
  if (m < 1) throw FormatError("m must be positive");
  const json& mats = field(j, "mats");
  if (!mats.is_array() || static_cast<std::int64_t>(mats.size()) != m)
    throw FormatError("mats must hold m = " + std::to_string(m) + " matrices");
  const auto costs = int_list(field(j, "costs"), static_cast<std::size_t>(m), "costs");

  if (!mod) {
    IntegerInstance out;
    out.n = n;
    for (const auto& a : mats) out.mats.push_back(int_matrix(a, n, n, "mats"));
    out.costs = costs;
    out.meta = read_meta(j, &out.entry_bound);
    out.validate();
    return out;
  }
  Instance out;
  out.modulus = *mod;
  out.n = n;
  for (const auto& a : mats) out.mats.push_back(FieldMatrix::from_integers(*mod, n, n, int_matrix(a, n, n, "mats")));
  out.costs = costs;
  out.meta = read_meta(j, nullptr);
  out.validate();
  return out;
}

AnyInstance load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

void save_file(const std::string& path, const AnyInstance& inst) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << save(inst);
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace degdet
