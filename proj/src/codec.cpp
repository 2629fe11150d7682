#include "ncdh/codec.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

namespace ncdh::codec {

namespace {

template <typename F>
auto guarded(const char* what, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Natural hex_natural(const Json& j, const char* key) { return natural_from_hex(field(j, key).get<std::string>()); }

std::uint64_t hex_u64(const Json& j, const char* key) {
  const Natural v = hex_natural(j, key);
  if (v > std::numeric_limits<std::uint64_t>::max()) throw FormatError(std::string(key) + " exceeds 64 bits");
  return static_cast<std::uint64_t>(v);
}

PrimeModulus modulus_of(const Json& j) { return PrimeModulus(hex_u64(j, "p")); }

template <typename M>
Json report_common(const AttackReport<M>& r) {
  Json j;
  j["recovered_a"] = r.recovered_a ? Json(to_hex(*r.recovered_a)) : Json(nullptr);
  j["a_modulus"] = r.a_modulus ? Json(to_hex(*r.a_modulus)) : Json(nullptr);
  j["T"] = r.recovered_t ? to_json(*r.recovered_t) : Json(nullptr);
  j["ops"] = to_hex(Natural(r.ops));
  j["table_size"] = to_hex(Natural(r.table_size));
  j["candidates_tested"] = to_hex(Natural(r.candidates_tested));
  j["elapsed_ms"] = r.elapsed_ms;
  j["mode"] = r.mode;
  return j;
}

}  // namespace

Json to_json(const AlgebraElement& a) {
  Json j = Json::array();
  for (const auto& c : a.coeffs()) j.push_back(to_hex(c));
  return j;
}

AlgebraElement algebra_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("algebra element", [&] {
    if (!j.is_array() || j.size() != 6) throw FormatError("algebra element needs 6 coefficients");
    auto coeffs = AlgebraElement::zero(p).coeffs();
    for (std::size_t i = 0; i < 6; ++i) coeffs[i] = field_from_hex(j[i].get<std::string>(), p);
    return AlgebraElement(coeffs);
  });
}

Json to_json(const PlatformMatrix& m) {
  Json j = Json::array();
  for (const auto& e : m.entries()) {
    for (const auto& c : e.coeffs()) j.push_back(to_hex(c));
  }
  return j;
}

PlatformMatrix platform_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("platform matrix", [&] {
    if (!j.is_array() || j.size() != 24) throw FormatError("platform matrix needs 24 coefficients");
    std::vector<AlgebraElement> entries;
    for (std::size_t k = 0; k < 4; ++k) {
      Json part(Json::value_t::array);
      for (std::size_t i = 0; i < 6; ++i) part.push_back(j[k * 6 + i]);
      entries.push_back(algebra_from_json(part, p));
    }
    return PlatformMatrix(2, std::move(entries));
  });
}

Json to_json(const FieldMatrix& m) {
  Json j = Json::array();
  for (const auto& e : m.entries()) j.push_back(to_hex(e));
  return j;
}

FieldMatrix field_matrix_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("field matrix", [&] {
    if (!j.is_array() || j.empty()) throw FormatError("field matrix needs entries");
    std::size_t n = 1;
    while (n * n < j.size()) ++n;
    if (n * n != j.size()) throw FormatError("field matrix entry count is not a square");
    std::vector<FieldElement> entries;
    for (const auto& e : j) entries.push_back(field_from_hex(e.get<std::string>(), p));
    return FieldMatrix(n, std::move(entries));
  });
}

Json to_json(const TorusElement& t) { return Json::array({to_hex(t.x()), to_hex(t.y())}); }

TorusElement torus_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("torus element", [&] {
    if (!j.is_array() || j.size() != 2) throw FormatError("torus element needs [x, y]");
    return TorusElement(field_from_hex(j[0].get<std::string>(), p), field_from_hex(j[1].get<std::string>(), p));
  });
}

Json to_json(const PublicParams& params) {
  Json j;
  j["p"] = to_hex(Natural(params.p.value()));
  j["seed"] = to_hex(Natural(params.seed));
  j["steps"] = to_hex(Natural(params.steps));
  j["n"] = to_hex(params.n);
  j["X"] = to_json(params.x);
  j["context"] = params.context;
  return j;
}

PublicParams params_from_json(const Json& j) {
  return guarded("params", [&] {
    const PrimeModulus p = modulus_of(j);
    PublicParams params{p,
                        hex_u64(j, "seed"),
                        static_cast<std::size_t>(hex_u64(j, "steps")),
                        platform_from_json(field(j, "X"), p),
                        hex_natural(j, "n"),
                        j.value("context", std::string{})};
    validate(params);
    return params;
  });
}

Json keypair_to_json(const KeyPair& kp) {
  Json j;
  j["p"] = to_hex(Natural(kp.y(0, 0).modulus()));
  j["a"] = to_hex(kp.a);
  j["T"] = to_json(kp.t);
  j["Y"] = to_json(kp.y);
  return j;
}

KeyPair keypair_from_json(const Json& j) {
  return guarded("keypair", [&] {
    const PrimeModulus p = modulus_of(j);
    return KeyPair{hex_natural(j, "a"), torus_from_json(field(j, "T"), p), platform_from_json(field(j, "Y"), p)};
  });
}

Json token_to_json(const PlatformMatrix& y) {
  Json j;
  j["p"] = to_hex(Natural(y(0, 0).modulus()));
  j["Y"] = to_json(y);
  return j;
}

PlatformMatrix token_from_json(const Json& j) {
  return guarded("token", [&] { return platform_from_json(field(j, "Y"), modulus_of(j)); });
}

Json to_json(const HybridCiphertext& ct) {
  Json j;
  j["token"] = to_json(ct.token);
  j["body"] = to_hex(std::span<const std::uint8_t>(ct.body));
  return j;
}

HybridCiphertext hybrid_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("hybrid ciphertext", [&] {
    return HybridCiphertext{platform_from_json(field(j, "token"), p), bytes_from_hex(field(j, "body").get<std::string>())};
  });
}

Json to_json(const TextbookCiphertext& ct) {
  Json j;
  j["token"] = to_json(ct.token);
  j["c2"] = to_json(ct.c2);
  return j;
}

TextbookCiphertext textbook_from_json(const Json& j, const PrimeModulus& p) {
  return guarded("textbook ciphertext", [&] {
    return TextbookCiphertext{platform_from_json(field(j, "token"), p), platform_from_json(field(j, "c2"), p)};
  });
}

Json to_json(const CommutativeInstance& inst) {
  Json j;
  j["p"] = to_hex(Natural(inst.p.value()));
  j["X"] = to_json(inst.x);
  j["ya"] = to_json(inst.y_a);
  j["yb"] = to_json(inst.y_b);
  return j;
}

CommutativeInstance commutative_from_json(const Json& j) {
  return guarded("commutative instance", [&] {
    const PrimeModulus p = modulus_of(j);
    CommutativeInstance inst{p, field_matrix_from_json(field(j, "X"), p), field_matrix_from_json(field(j, "ya"), p),
                             field_matrix_from_json(field(j, "yb"), p)};
    if (inst.x.size() != 2 || inst.y_a.size() != 2 || inst.y_b.size() != 2) {
      throw FormatError("commutative instance matrices must be 2x2");
    }
    return inst;
  });
}

Json to_json(const AttackReport<PlatformMatrix>& r) {
  Json j = report_common(r);
  j["K"] = r.recovered_k ? to_json(*r.recovered_k) : Json(nullptr);
  j["key"] = r.recovered_k ? Json(to_hex(kdf(*r.recovered_k))) : Json(nullptr);
  return j;
}

Json to_json(const AttackReport<FieldMatrix>& r) {
  Json j = report_common(r);
  j["K"] = r.recovered_k ? to_json(*r.recovered_k) : Json(nullptr);
  return j;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j, bool owner_only) {
  const std::string text = j.dump(2) + "\n";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, owner_only ? 0600 : 0644);
  if (fd < 0) throw std::runtime_error("cannot create " + path.string());
  if (owner_only) ::fchmod(fd, 0600);
  std::size_t written = 0;
  while (written < text.size()) {
    const ssize_t w = ::write(fd, text.data() + written, text.size() - written);
    if (w <= 0) {
      ::close(fd);
      throw std::runtime_error("write failed for " + path.string());
    }
    written += static_cast<std::size_t>(w);
  }
  ::close(fd);
}

}  // namespace ncdh::codec
