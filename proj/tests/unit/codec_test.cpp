#include <gtest/gtest.h>

#include <sys/stat.h>

#include <filesystem>

#include "ncdh/codec.hpp"

namespace ncdh {
namespace {

using codec::Json;

const PrimeModulus P101(101);

const PublicParams& params() {
  static const PublicParams p = setup(P101, 3, {.steps = 4, .min_order = 4096}, "codec");
  return p;
}

TEST(Codec, PlatformAndAlgebra) {
  Rng rng(1);
  const auto kp = keygen(params(), rng);
  const Json j = codec::to_json(kp.y);
  ASSERT_EQ(j.size(), 24u);
  EXPECT_EQ(j[0].get<std::string>().size(), 2u);  // fixed width for p = 101
  EXPECT_EQ(codec::platform_from_json(j, P101), kp.y);
  const auto a = random_algebra_element(rng, P101);
  EXPECT_EQ(codec::algebra_from_json(codec::to_json(a), P101), a);
  EXPECT_EQ(codec::torus_from_json(codec::to_json(kp.t), P101), kp.t);
}

TEST(Codec, ParamsKeypairToken) {
  const Json j = codec::to_json(params());
  const auto back = codec::params_from_json(j);
  EXPECT_EQ(back.x, params().x);
  EXPECT_EQ(back.n, params().n);
  EXPECT_EQ(back.seed, params().seed);
  EXPECT_EQ(back.context, "codec");
  EXPECT_EQ(j["p"], "65");

  Rng rng(2);
  const auto kp = keygen(params(), rng);
  const auto kp2 = codec::keypair_from_json(codec::keypair_to_json(kp));
  EXPECT_EQ(kp2.a, kp.a);
  EXPECT_EQ(kp2.t, kp.t);
  EXPECT_EQ(kp2.y, kp.y);
  EXPECT_EQ(codec::token_from_json(codec::token_to_json(kp.y)), kp.y);
}

TEST(Codec, Ciphertexts) {
  Rng rng(3);
  const auto bob = keygen(params(), rng);
  const std::vector<std::uint8_t> msg{1, 2, 3, 250};
  const auto ct = hybrid_encrypt(params(), bob.y, msg, rng);
  const auto ct2 = codec::hybrid_from_json(codec::to_json(ct), P101);
  EXPECT_EQ(ct2.token, ct.token);
  EXPECT_EQ(ct2.body, ct.body);
  EXPECT_EQ(codec::to_json(ct)["body"].get<std::string>().size(), 8u);
}

TEST(Codec, CommutativeInstance) {
  Rng rng(4);
  const auto tr = make_commutative_transcript(P101, rng);
  const auto back = codec::commutative_from_json(codec::to_json(tr.instance));
  EXPECT_EQ(back.x, tr.instance.x);
  EXPECT_EQ(back.y_a, tr.instance.y_a);
  EXPECT_EQ(back.y_b, tr.instance.y_b);
}

TEST(Codec, RejectsMalformedInput) {
  Json j = codec::to_json(params());
  j["n"] = "zz";
  EXPECT_THROW(codec::params_from_json(j), FormatError);
  j = codec::to_json(params());
  j.erase("X");
  EXPECT_THROW(codec::params_from_json(j), FormatError);
  j = codec::to_json(params());
  j["n"] = to_hex(params().n + 1);
  EXPECT_THROW(codec::params_from_json(j), InvalidParameters);
  EXPECT_THROW(codec::platform_from_json(Json::array({"00"}), P101), FormatError);
  EXPECT_THROW(codec::algebra_from_json(Json::array({"00", "00", "00", "00", "00", "65"}), P101), FormatError);
  EXPECT_THROW(codec::token_from_json(Json::parse(R"({"p":"4","Y":[]})")), InvalidModulus);
}

TEST(Codec, OwnerOnlyFiles) {
  const auto path = std::filesystem::temp_directory_path() / "ncdh_codec_test_key.json";
  std::filesystem::remove(path);
  Rng rng(5);
  codec::write_file(path, codec::keypair_to_json(keygen(params(), rng)), true);
  struct stat st{};
  ASSERT_EQ(::stat(path.c_str(), &st), 0);
  EXPECT_EQ(st.st_mode & 0777, 0600);
  EXPECT_NO_THROW(codec::keypair_from_json(codec::read_file(path)));
  std::filesystem::remove(path);
  EXPECT_THROW(codec::read_file(path), FormatError);
}

}  // namespace
}  // namespace ncdh
