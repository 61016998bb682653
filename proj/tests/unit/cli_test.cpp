#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <sstream>

#include "cli/cli.hpp"

namespace {

namespace fs = std::filesystem;
using gabkron::Bytes;
using namespace gabkron::cli;

const std::string kSeed = "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";
const std::string kSeed2 = "ff0102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("gabkron_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  void write_text(const std::string& name, const std::string& text) {
    write_file(path(name), Bytes(text.begin(), text.end()));
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, SeedParsing) {
  const auto s = parse_seed(kSeed);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(s->size(), 32U);
  EXPECT_EQ((*s)[31], 0x1f);
  EXPECT_TRUE(parse_seed(std::string(64, 'A')).has_value());
  EXPECT_FALSE(parse_seed("abc").has_value());
  EXPECT_FALSE(parse_seed(std::string(63, '0') + "g").has_value());
}

TEST_F(CliTest, DeterministicKeysAndCiphertexts) {
  write_text("msg.txt", "hello");
  for (const char* tag : {"a", "b"}) {
    const std::string t = tag;
    ASSERT_EQ(call({"keygen", "--set", "toy-improved", "--seed", kSeed, "--pk", path("pk" + t), "--sk",
                    path("sk" + t)}),
              kOk)
        << err_.str();
    ASSERT_EQ(call({"encrypt", "--pk", path("pk" + t), "--in", path("msg.txt"), "--out", path("ct" + t), "--seed",
                    kSeed2}),
              kOk)
        << err_.str();
  }
  EXPECT_EQ(read_file(path("pka")), read_file(path("pkb")));
  EXPECT_EQ(read_file(path("ska")), read_file(path("skb")));
  EXPECT_EQ(read_file(path("cta")), read_file(path("ctb")));

  ASSERT_EQ(call({"keygen", "--set", "toy-improved", "--seed", kSeed2, "--pk", path("pkc"), "--sk", path("skc")}),
            kOk);
  EXPECT_NE(read_file(path("pka")), read_file(path("pkc")));
}

TEST_F(CliTest, NewSet128RoundTrip) {
  ASSERT_EQ(call({"keygen", "--set", "new-gabkron-128", "--seed", kSeed, "--pk", path("pk"), "--sk", path("sk"),
                  "--format", "json"}),
            kOk)
      << err_.str();
  const auto report = nlohmann::json::parse(out_.str());
  EXPECT_EQ(report.at("pk_file_bytes").get<std::size_t>(), 63U + 4050U);
  EXPECT_EQ(read_file(path("pk")).size(), 63U + 4050U);

  std::string text(401, 'x');
  text[0] = 'A';
  write_text("msg", text);
  ASSERT_EQ(call({"encrypt", "--pk", path("pk"), "--in", path("msg"), "--out", path("ct")}), kOk) << err_.str();
  ASSERT_EQ(call({"decrypt", "--sk", path("sk"), "--in", path("ct"), "--out", path("dec")}), kOk) << err_.str();
  EXPECT_EQ(read_file(path("dec")), read_file(path("msg")));

  write_text("big", std::string(402, 'y'));
  EXPECT_EQ(call({"encrypt", "--pk", path("pk"), "--in", path("big"), "--out", path("ct2")}), kIoError);
}

TEST_F(CliTest, CorruptInputs) {
  write_text("msg", "abc");
  ASSERT_EQ(call({"keygen", "--set", "toy-improved", "--seed", kSeed, "--pk", path("pk"), "--sk", path("sk")}), kOk);
  ASSERT_EQ(call({"encrypt", "--pk", path("pk"), "--in", path("msg"), "--out", path("ct")}), kOk);
  Bytes ct = read_file(path("ct"));
  write_file(path("short"), Bytes(ct.begin(), ct.end() - 1));
  EXPECT_EQ(call({"decrypt", "--sk", path("sk"), "--in", path("short"), "--out", path("dec")}), kIoError);
  ct[0] = 'X';
  write_file(path("magic"), ct);
  EXPECT_EQ(call({"decrypt", "--sk", path("sk"), "--in", path("magic"), "--out", path("dec")}), kIoError);
  EXPECT_EQ(call({"decrypt", "--sk", path("pk"), "--in", path("ct"), "--out", path("dec")}), kIoError);
  EXPECT_EQ(call({"decrypt", "--sk", path("sk"), "--in", path("missing"), "--out", path("dec")}), kIoError);

  ASSERT_EQ(call({"keygen", "--set", "toy-improved-3x2", "--seed", kSeed, "--pk", path("pk3"), "--sk",
                  path("sk3")}),
            kOk);
  EXPECT_EQ(call({"decrypt", "--sk", path("sk3"), "--in", path("ct"), "--out", path("dec")}), kIoError);
}

TEST_F(CliTest, ParameterErrors) {
  EXPECT_EQ(call({"keygen", "--set", "gabkron-128-original", "--pk", path("pk"), "--sk", path("sk")}),
            kParamViolation);
  EXPECT_NE(err_.str().find("exceeds"), std::string::npos);
  EXPECT_EQ(call({"keygen", "--set", "nope", "--pk", path("pk"), "--sk", path("sk")}), kParamViolation);
  EXPECT_EQ(call({"keygen", "--set", "new-gabkron-128", "--param", "lambda_prime=3", "--pk", path("pk"), "--sk",
                  path("sk")}),
            kParamViolation);
  EXPECT_EQ(call({"keygen", "--set", "toy-improved", "--seed", "12", "--pk", path("pk"), "--sk", path("sk")}),
            kIoError);
  EXPECT_EQ(call({"keygen", "--set", "toy-improved"}), kIoError);
  EXPECT_EQ(call({}), kIoError);
  EXPECT_EQ(call({"frobnicate"}), kIoError);
}

TEST_F(CliTest, ExplicitParameters) {
  EXPECT_EQ(call({"keygen", "--variant", "improved", "--param", "m=12", "--param", "n1=2", "--param", "k1=2",
                  "--param", "n2=12", "--param", "k2=4", "--param", "t=1", "--param", "t1=1", "--param",
                  "lambda=3", "--param", "lambda_prime=2", "--seed", kSeed, "--pk", path("pk"), "--sk", path("sk")}),
            kOk)
      << err_.str();
  EXPECT_EQ(call({"keygen", "--param", "bogus=1", "--pk", path("pk"), "--sk", path("sk")}), kParamViolation);
}

TEST_F(CliTest, AuditReports) {
  ASSERT_EQ(call({"audit", "--all", "--format", "json"}), kOk) << err_.str();
  const auto all = nlohmann::json::parse(out_.str());
  EXPECT_EQ(all.at("result"), "match");

  ASSERT_EQ(call({"audit", "--prop1", "--lemmas", "--trials", "10", "--seed", kSeed, "--format", "json"}), kOk)
      << err_.str();
  const auto more = nlohmann::json::parse(out_.str());
  EXPECT_EQ(more.at("result"), "match");
  EXPECT_TRUE(more.contains("circulant_scrambler"));

  ASSERT_EQ(call({"audit", "--circulant-scrambler", "--trials", "5", "--seed", kSeed}), kOk);
  EXPECT_NE(out_.str().find("result=match"), std::string::npos);
}

}  // namespace
