// Command-line front end: parameter generation, keys, exchange, encryption,
// attacks and utilities. Exit codes: 0 success, 1 usage, 2 domain error.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "ncdh/attacks.hpp"
#include "ncdh/codec.hpp"
#include "ncdh/encryption.hpp"

namespace {

using namespace ncdh;
using codec::Json;

/// Seed source shared by every randomized subcommand.
struct SeedOption {
  std::optional<std::uint64_t> seed;
  bool random = false;

  void attach(CLI::App* app, const std::string& name = "--seed") {
    auto* s = app->add_option(name, seed, "Seed for the deterministic generator");
    auto* r = app->add_flag("--random", random, "Seed from the operating system");
    s->excludes(r);
  }

  std::uint64_t resolve(const std::string& name = "--seed") const {
    if (seed) return *seed;
    if (!random) throw CLI::ValidationError(name, "randomized command needs " + name + " or --random");
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) | rd();
  }
};

void emit(const Json& j, const std::string& out, bool owner_only = false) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    codec::write_file(out, j, owner_only);
  }
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& data) {
  if (path.empty() || path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

Natural parse_decimal(const std::string& text, const std::string& what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw CLI::ValidationError(what, "expected a decimal integer");
  }
  return Natural(text);
}

/// A matrix file carries "p" and the matrix under the first of these keys.
const Json& matrix_field(const Json& j) {
  for (const char* key : {"M", "X", "Y", "c2"}) {
    if (j.is_object() && j.contains(key)) return j.at(key);
  }
  throw FormatError("matrix file needs one of M, X, Y, c2");
}

PrimeModulus modulus_field(const Json& j) {
  if (!j.is_object() || !j.contains("p")) throw FormatError("missing field 'p'");
  const Natural p = natural_from_hex(j.at("p").get<std::string>());
  if (p > std::numeric_limits<std::uint64_t>::max()) throw InvalidModulus("p exceeds 64 bits");
  return PrimeModulus(static_cast<std::uint64_t>(p));
}

unsigned thread_count(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("NCDH_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw CLI::ValidationError("NCDH_THREADS", "expected a positive integer");
    }
  }
  return 1;
}

std::vector<std::size_t> parse_ordering(const std::string& text, std::size_t n, const std::string& what) {
  std::vector<std::size_t> out;
  if (text.empty()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Natural v = parse_decimal(item, what);
    if (v < 1 || v > n) throw CLI::ValidationError(what, "index out of range");
    out.push_back(static_cast<std::size_t>(v) - 1);
  }
  return out;
}

Json value_json(const FieldElement& x) { return to_hex(x); }
Json value_json(const AlgebraElement& a) { return codec::to_json(a); }

template <typename M>
Json qdet_report(const M& m, std::optional<std::size_t> row, std::optional<std::size_t> col, const std::string& rows,
                 const std::string& cols) {
  Json out;
  const std::size_t n = m.size();
  if (row || col) {
    if (!row || !col) throw CLI::ValidationError("--row/--col", "give both or neither");
    if (*row < 1 || *row > n || *col < 1 || *col > n) throw CLI::ValidationError("--row/--col", "index out of range");
    out["kind"] = "quasideterminant";
    out["row"] = *row;
    out["col"] = *col;
    out["value"] = value_json(quasideterminant(m, *row - 1, *col - 1));
  } else {
    out["kind"] = "nc_det";
    out["value"] = value_json(nc_det(m, parse_ordering(rows, n, "--rows"), parse_ordering(cols, n, "--cols")));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugation-masked Diffie-Hellman over GL_2(F_p[S_3]) and its cryptanalysis"};
  app.require_subcommand(1);
  std::function<void()> action;

  // params
  auto* params_cmd = app.add_subcommand("params", "Generate public parameters");
  std::uint64_t params_p = 0;
  std::size_t params_steps = 8;
  std::string params_min = "4096", params_max, params_context, params_out;
  SeedOption params_seed;
  params_cmd->add_option("--p", params_p, "Field prime")->required();
  params_cmd->add_option("--steps", params_steps, "Structured factors in X")->capture_default_str();
  params_cmd->add_option("--min-order", params_min, "Least acceptable ord(X)")->capture_default_str();
  params_cmd->add_option("--max-order", params_max, "Largest acceptable ord(X)");
  params_cmd->add_option("--context", params_context, "Free-form label stored with the parameters");
  params_cmd->add_option("-o,--out", params_out, "Output file (default stdout)");
  params_seed.attach(params_cmd);
  params_cmd->callback([&] {
    action = [&] {
      SamplerConfig cfg{.steps = params_steps, .min_order = parse_decimal(params_min, "--min-order")};
      if (!params_max.empty()) cfg.max_order = parse_decimal(params_max, "--max-order");
      emit(codec::to_json(setup(PrimeModulus(params_p), params_seed.resolve(), cfg, params_context)), params_out);
    };
  });

  // keygen
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key pair");
  std::string keygen_params, keygen_out, keygen_token;
  SeedOption keygen_seed;
  keygen_cmd->add_option("--params", keygen_params)->required();
  keygen_cmd->add_option("-o,--out", keygen_out, "Private key file (mode 0600)")->required();
  keygen_cmd->add_option("--token-out", keygen_token, "Public token file (default stdout)");
  keygen_seed.attach(keygen_cmd);
  keygen_cmd->callback([&] {
    action = [&] {
      const auto params = codec::params_from_json(codec::read_file(keygen_params));
      Rng rng(keygen_seed.resolve());
      const auto kp = keygen(params, rng);
      emit(codec::keypair_to_json(kp), keygen_out, true);
      emit(codec::token_to_json(kp.y), keygen_token);
    };
  });

  // exchange
  auto* exchange_cmd = app.add_subcommand("exchange", "Run both parties end to end and compare keys");
  std::string exchange_params, exchange_dir;
  std::optional<std::uint64_t> seed_a, seed_b;
  bool exchange_random = false;
  exchange_cmd->add_option("--params", exchange_params)->required();
  auto* sa = exchange_cmd->add_option("--seed-a", seed_a, "Seed for Alice");
  auto* sb = exchange_cmd->add_option("--seed-b", seed_b, "Seed for Bob");
  auto* er = exchange_cmd->add_flag("--random", exchange_random, "Seed both parties from the operating system");
  er->excludes(sa)->excludes(sb);
  exchange_cmd->add_option("--transcript", exchange_dir,
                           "Directory for alice.json, bob.json (private), ya.json, yb.json");
  exchange_cmd->callback([&] {
    action = [&] {
      if (!exchange_random && (!seed_a || !seed_b)) {
        throw CLI::ValidationError("--seed-a/--seed-b", "give both seeds or --random");
      }
      std::random_device rd;
      const auto params = codec::params_from_json(codec::read_file(exchange_params));
      Rng rng_a(seed_a.value_or((std::uint64_t{rd()} << 32) | rd()));
      Rng rng_b(seed_b.value_or((std::uint64_t{rd()} << 32) | rd()));
      const auto alice = keygen(params, rng_a), bob = keygen(params, rng_b);
      const auto ka = derive_shared(alice, bob.y), kb = derive_shared(bob, alice.y);
      if (!exchange_dir.empty()) {
        const std::filesystem::path dir(exchange_dir);
        std::filesystem::create_directories(dir);
        codec::write_file(dir / "alice.json", codec::keypair_to_json(alice), true);
        codec::write_file(dir / "bob.json", codec::keypair_to_json(bob), true);
        codec::write_file(dir / "ya.json", codec::token_to_json(alice.y));
        codec::write_file(dir / "yb.json", codec::token_to_json(bob.y));
      }
      std::cout << "alice " << to_hex(ka.key) << "\nbob   " << to_hex(kb.key) << "\n";
      if (ka.k != kb.k || ka.key != kb.key) throw Exhausted("derived keys differ");
    };
  });

  // encrypt / decrypt
  auto* encrypt_cmd = app.add_subcommand("encrypt", "Encrypt to a recipient token");
  std::string enc_params, enc_to, enc_in, enc_out;
  bool enc_textbook = false;
  SeedOption enc_seed;
  encrypt_cmd->add_option("--params", enc_params)->required();
  encrypt_cmd->add_option("--to", enc_to, "Recipient token file")->required();
  encrypt_cmd->add_option("--in", enc_in, "Plaintext bytes, or a matrix file with --textbook")->required();
  encrypt_cmd->add_option("-o,--out", enc_out, "Ciphertext file (default stdout)");
  encrypt_cmd->add_flag("--textbook", enc_textbook, "Textbook mode: c2 = K M for an invertible matrix M");
  enc_seed.attach(encrypt_cmd);
  encrypt_cmd->callback([&] {
    action = [&] {
      const auto params = codec::params_from_json(codec::read_file(enc_params));
      const auto token = codec::token_from_json(codec::read_file(enc_to));
      Rng rng(enc_seed.resolve());
      if (enc_textbook) {
        const Json m = codec::read_file(enc_in);
        const auto message = codec::platform_from_json(matrix_field(m), params.p);
        emit(codec::to_json(textbook_encrypt(params, token, message, rng)), enc_out);
      } else {
        emit(codec::to_json(hybrid_encrypt(params, token, read_bytes(enc_in), rng)), enc_out);
      }
    };
  });

  auto* decrypt_cmd = app.add_subcommand("decrypt", "Decrypt with a private key");
  std::string dec_key, dec_in, dec_out;
  bool dec_textbook = false;
  decrypt_cmd->add_option("--key", dec_key, "Private key file")->required();
  decrypt_cmd->add_option("--in", dec_in, "Ciphertext file")->required();
  decrypt_cmd->add_option("-o,--out", dec_out, "Plaintext output (default stdout)");
  decrypt_cmd->add_flag("--textbook", dec_textbook, "Ciphertext is textbook mode");
  decrypt_cmd->callback([&] {
    action = [&] {
      const auto kp = codec::keypair_from_json(codec::read_file(dec_key));
      const PrimeModulus p = kp.y(0, 0).prime();
      const Json ct = codec::read_file(dec_in);
      if (dec_textbook) {
        Json out;
        out["p"] = to_hex(Natural(p.value()));
        out["M"] = codec::to_json(textbook_decrypt(kp, codec::textbook_from_json(ct, p)));
        emit(out, dec_out);
      } else {
        write_bytes(dec_out, hybrid_decrypt(kp, codec::hybrid_from_json(ct, p)));
      }
    };
  });

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Cryptanalysis");
  attack_cmd->require_subcommand(1);
  auto* alg_cmd = attack_cmd->add_subcommand("alg41", "Table of X powers plus torus scan");
  std::string alg_params, alg_ya, alg_yb, alg_mode = "normalized", alg_out;
  std::optional<unsigned> alg_threads;
  alg_cmd->add_option("--params", alg_params)->required();
  alg_cmd->add_option("--ya", alg_ya, "Alice's token file")->required();
  alg_cmd->add_option("--yb", alg_yb, "Bob's token file")->required();
  alg_cmd->add_option("--mode", alg_mode)->check(CLI::IsMember({"naive", "normalized"}))->capture_default_str();
  alg_cmd->add_option("--threads", alg_threads, "Scan threads (default NCDH_THREADS or 1)");
  alg_cmd->add_option("-o,--out", alg_out, "Report file (default stdout)");
  alg_cmd->callback([&] {
    action = [&] {
      const auto params = codec::params_from_json(codec::read_file(alg_params));
      const auto ya = codec::token_from_json(codec::read_file(alg_ya));
      const auto yb = codec::token_from_json(codec::read_file(alg_yb));
      AttackLimits limits;
      limits.threads = thread_count(alg_threads);
      emit(codec::to_json(algorithm41(params, ya, yb, scan_mode_from_string(alg_mode), limits)), alg_out);
    };
  });

  auto* inst_cmd = attack_cmd->add_subcommand("instance", "Generate an honest transcript over GL_2(F_p)");
  std::uint64_t inst_p = 0;
  std::string inst_split = "any", inst_out, inst_key;
  SeedOption inst_seed;
  inst_cmd->add_option("--p", inst_p)->required();
  inst_cmd->add_option("--split", inst_split, "Eigenvalue field of X")
      ->check(CLI::IsMember({"any", "split", "irreducible"}))
      ->capture_default_str();
  inst_cmd->add_option("-o,--out", inst_out, "Instance file (default stdout)");
  inst_cmd->add_option("--key-out", inst_key, "Honest shared matrix K for comparison (mode 0600)");
  inst_seed.attach(inst_cmd);
  inst_cmd->callback([&] {
    action = [&] {
      const auto split = inst_split == "split"         ? EigenSplit::Split
                         : inst_split == "irreducible" ? EigenSplit::Irreducible
                                                       : EigenSplit::Any;
      Rng rng(inst_seed.resolve());
      const auto tr = make_commutative_transcript(PrimeModulus(inst_p), rng, split);
      emit(codec::to_json(tr.instance), inst_out);
      if (!inst_key.empty()) {
        Json k;
        k["p"] = to_hex(Natural(inst_p));
        k["M"] = codec::to_json(tr.k);
        codec::write_file(inst_key, k, true);
      }
    };
  });

  auto* eigen_cmd = attack_cmd->add_subcommand("eigen", "Eigenvalue attack on a GL_2(F_p) instance");
  auto* det_cmd = attack_cmd->add_subcommand("det", "Determinant reduction on a GL_2(F_p) instance");
  std::string comm_instance, comm_out;
  for (auto* cmd : {eigen_cmd, det_cmd}) {
    cmd->add_option("--instance", comm_instance, "Instance file")->required();
    cmd->add_option("-o,--out", comm_out, "Report file (default stdout)");
  }
  eigen_cmd->callback([&] {
    action = [&] { emit(codec::to_json(eigen_attack(codec::commutative_from_json(codec::read_file(comm_instance)))), comm_out); };
  });
  det_cmd->callback([&] {
    action = [&] {
      const auto c = det_reduction(codec::commutative_from_json(codec::read_file(comm_instance)));
      Json out;
      out["residue"] = to_hex(c.residue);
      out["modulus"] = to_hex(c.modulus);
      emit(out, comm_out);
    };
  });

  // order
  auto* order_cmd = app.add_subcommand("order", "Element order, or the platform group order with --group");
  bool order_group = false;
  std::optional<std::uint64_t> order_p;
  std::string order_matrix;
  order_cmd->add_flag("--group", order_group, "Print |GL_2(F_p[S_3])|");
  order_cmd->add_option("--p", order_p, "Field prime for --group");
  order_cmd->add_option("--matrix", order_matrix, "Matrix file with p and one of M, X, Y, c2");
  order_cmd->callback([&] {
    action = [&] {
      if (order_group) {
        if (!order_p) throw CLI::ValidationError("--p", "--group needs --p");
        std::cout << group_order(*order_p) << "\n";
        return;
      }
      if (order_matrix.empty()) throw CLI::ValidationError("--matrix", "give --matrix or --group");
      const Json j = codec::read_file(order_matrix);
      std::cout << element_order(codec::platform_from_json(matrix_field(j), modulus_field(j))) << "\n";
    };
  });

  // qdet
  auto* qdet_cmd = app.add_subcommand("qdet", "Quasideterminant or noncommutative determinant of a matrix file");
  std::string qdet_matrix, qdet_rows, qdet_cols, qdet_out;
  std::optional<std::size_t> qdet_row, qdet_col;
  qdet_cmd->add_option("--matrix", qdet_matrix, "Matrix file: n^2 field entries or 6 n^2 algebra coefficients")
      ->required();
  qdet_cmd->add_option("--row", qdet_row, "1-based row of a single quasideterminant");
  qdet_cmd->add_option("--col", qdet_col, "1-based column of a single quasideterminant");
  qdet_cmd->add_option("--rows", qdet_rows, "Row ordering for nc_det, e.g. 2,1");
  qdet_cmd->add_option("--cols", qdet_cols, "Column ordering for nc_det");
  qdet_cmd->add_option("-o,--out", qdet_out, "Output file (default stdout)");
  qdet_cmd->callback([&] {
    action = [&] {
      const Json j = codec::read_file(qdet_matrix);
      const PrimeModulus p = modulus_field(j);
      const Json& m = matrix_field(j);
      if (!m.is_array()) throw FormatError("matrix must be an array");
      const auto is_square = [](std::size_t k) {
        std::size_t r = 0;
        while (r * r < k) ++r;
        return r * r == k;
      };
      if (is_square(m.size())) {
        emit(qdet_report(codec::field_matrix_from_json(m, p), qdet_row, qdet_col, qdet_rows, qdet_cols), qdet_out);
      } else if (m.size() % 6 == 0 && is_square(m.size() / 6)) {
        emit(qdet_report(codec::platform_from_json(m, p), qdet_row, qdet_col, qdet_rows, qdet_cols), qdet_out);
      } else {
        throw FormatError("entry count is neither n^2 nor 6 n^2");
      }
    };
  });

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "CSV of attack op counts and timings");
  std::vector<std::uint64_t> bench_primes{31, 41, 53, 61};
  std::string bench_max = "16384", bench_out;
  std::size_t bench_steps = 2;
  std::uint64_t bench_trials = 100, bench_scan_p = 101;
  std::optional<unsigned> bench_threads;
  SeedOption bench_seed;
  bench_cmd->add_option("--p", bench_primes, "Primes to benchmark")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--steps", bench_steps)->capture_default_str();
  bench_cmd->add_option("--max-order", bench_max, "Largest ord(X) tabulated")->capture_default_str();
  bench_cmd->add_option("--scan-p", bench_scan_p, "Prime for the nc_det power-rule scan")->capture_default_str();
  bench_cmd->add_option("--scan-trials", bench_trials)->capture_default_str();
  bench_cmd->add_option("--threads", bench_threads);
  bench_cmd->add_option("-o,--out", bench_out, "CSV file (default stdout)");
  bench_seed.attach(bench_cmd);
  bench_cmd->callback([&] {
    action = [&] {
      const std::uint64_t seed = bench_seed.resolve();
      AttackLimits limits;
      limits.threads = thread_count(bench_threads);
      std::ostringstream csv;
      csv << "p,n,mode,ops,table_size,elapsed_ms\n";
      for (std::uint64_t pv : bench_primes) {
        const PrimeModulus p(pv);
        const auto params = setup(p, seed, {.steps = bench_steps, .min_order = 3,
                                            .max_order = parse_decimal(bench_max, "--max-order")});
        Rng rng(seed);
        const auto alice = keygen(params, rng), bob = keygen(params, rng);
        for (auto mode : {ScanMode::Naive, ScanMode::Normalized}) {
          const auto r = algorithm41(params, alice.y, bob.y, mode, limits);
          csv << pv << ',' << params.n << ',' << r.mode << ',' << r.ops << ',' << r.table_size << ','
              << r.elapsed_ms << '\n';
        }
      }
      Rng scan_rng(seed);
      const auto scan = nc_reduction_scan(PrimeModulus(bench_scan_p), bench_trials, scan_rng);
      std::clog << "nc_reduction_scan p=" << bench_scan_p << " trials=" << scan.trials << " differs=" << scan.differs
                << " rate=" << scan.rate() << "\n";
      if (bench_out.empty() || bench_out == "-") {
        std::cout << csv.str();
      } else {
        std::ofstream(bench_out) << csv.str();
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    action();
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "Error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
