#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ncdh/attacks.hpp"
#include "ncdh/encryption.hpp"
#include "ncdh/protocol.hpp"

namespace ncdh::codec {

using Json = nlohmann::ordered_json;

// All numeric fields are lowercase hex strings. Field elements use the
// fixed-width form; naturals drop leading zeros.

Json to_json(const PlatformMatrix& m);  // 24 strings, row-major x basis
PlatformMatrix platform_from_json(const Json& j, const PrimeModulus& p);

Json to_json(const FieldMatrix& m);  // n*n strings, row-major
FieldMatrix field_matrix_from_json(const Json& j, const PrimeModulus& p);

Json to_json(const AlgebraElement& a);
AlgebraElement algebra_from_json(const Json& j, const PrimeModulus& p);

Json to_json(const TorusElement& t);
TorusElement torus_from_json(const Json& j, const PrimeModulus& p);

/// {"p", "seed", "steps", "n", "X", "context"}
Json to_json(const PublicParams& params);
PublicParams params_from_json(const Json& j);

/// {"p", "a", "T", "Y"}; private.
Json keypair_to_json(const KeyPair& kp);
KeyPair keypair_from_json(const Json& j);

/// {"p", "Y"}; the public half of a key pair.
Json token_to_json(const PlatformMatrix& y);
PlatformMatrix token_from_json(const Json& j);

/// {"token", "body"}
Json to_json(const HybridCiphertext& ct);
HybridCiphertext hybrid_from_json(const Json& j, const PrimeModulus& p);

/// {"token", "c2"}
Json to_json(const TextbookCiphertext& ct);
TextbookCiphertext textbook_from_json(const Json& j, const PrimeModulus& p);

/// {"p", "X", "ya", "yb"} with 2x2 F_p matrices.
Json to_json(const CommutativeInstance& inst);
CommutativeInstance commutative_from_json(const Json& j);

/// {"recovered_a", "a_modulus", "T", "ops", "table_size", "candidates_tested",
///  "elapsed_ms", "mode", "K", "key"}; absent values are null.
Json to_json(const AttackReport<PlatformMatrix>& r);
Json to_json(const AttackReport<FieldMatrix>& r);

Json read_file(const std::filesystem::path& path);
/// Writes `j` pretty-printed. `owner_only` creates the file with mode 0600.
void write_file(const std::filesystem::path& path, const Json& j, bool owner_only = false);

}  // namespace ncdh::codec
