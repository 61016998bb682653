#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>

#include "cli/report.hpp"
#include "gabkron/audit.hpp"
#include "gabkron/errors.hpp"
#include "gabkron/params.hpp"
#include "gabkron/scheme.hpp"
#include "gabkron/serialize.hpp"

namespace gabkron::cli {

namespace {

struct Options {
  std::string set;
  std::string variant;
  std::vector<std::string> overrides;
  std::string seed;
  std::string pk;
  std::string sk;
  std::string in;
  std::string out;
  std::string format = "text";
  std::size_t trials = 100;
  bool all = false;
  bool scrambler = false;
  bool lemmas = false;
};

std::unique_ptr<RandomSource> make_rng(const Options& o) {
  if (o.seed.empty()) return std::make_unique<SystemRandom>();
  auto bytes = parse_seed(o.seed);
  if (!bytes) throw ParseError("--seed must be 64 hexadecimal characters");
  return std::make_unique<SplitMix64>(SplitMix64::from_seed(*bytes));
}

Format format_of(const Options& o) { return o.format == "json" ? Format::json : Format::text; }

std::uint32_t* field_by_name(ParamSet& p, const std::string& key) {
  static const std::map<std::string, std::uint32_t ParamSet::*> fields = {
      {"q", &ParamSet::q},           {"m", &ParamSet::m},
      {"n", &ParamSet::n},           {"k", &ParamSet::k},
      {"n1", &ParamSet::n1},         {"n2", &ParamSet::n2},
      {"k1", &ParamSet::k1},         {"k2", &ParamSet::k2},
      {"t", &ParamSet::t},           {"t1", &ParamSet::t1},
      {"t2", &ParamSet::t2},         {"lambda", &ParamSet::lambda},
      {"lambda_prime", &ParamSet::lambda_prime}, {"security", &ParamSet::security},
  };
  auto it = fields.find(key);
  return it == fields.end() ? nullptr : &(p.*(it->second));
}

ParamSet resolve_params(const Options& o) {
  ParamSet p;
  if (!o.set.empty()) {
    auto named = find_param_set(o.set);
    if (!named) throw ParamViolation({"unknown parameter set '" + o.set + "'"});
    p = *named;
  } else if (o.overrides.empty()) {
    throw ParamViolation({"either --set or --param fields are required"});
  } else {
    p.name = "custom";
  }
  if (!o.variant.empty()) {
    if (o.variant == "improved") {
      p.variant = Variant::improved;
    } else if (o.variant == "repaired") {
      p.variant = Variant::repaired;
    } else if (o.variant == "original") {
      p.variant = Variant::original;
    } else {
      throw ParamViolation({"unknown variant '" + o.variant + "'"});
    }
  }
  if (o.overrides.empty()) {
    if (o.set.empty()) return setup(p);
    return setup(std::string_view(o.set));
  }
  // Derived fields are recomputed unless given explicitly.
  bool explicit_n = false, explicit_k = false, explicit_t2 = false;
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParamViolation({"--param expects key=value, got '" + kv + "'"});
    const std::string key = kv.substr(0, eq);
    auto* field = field_by_name(p, key);
    if (field == nullptr) throw ParamViolation({"unknown parameter field '" + key + "'"});
    try {
      const unsigned long v = std::stoul(kv.substr(eq + 1));
      *field = static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
      throw ParamViolation({"parameter field '" + key + "' needs a non-negative integer"});
    }
    explicit_n |= key == "n";
    explicit_k |= key == "k";
    explicit_t2 |= key == "t2";
  }
  if (!explicit_n) p.n = 0;
  if (!explicit_k) p.k = 0;
  if (!explicit_t2) p.t2 = 0;
  p.name = "custom";
  return setup(p);
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string(flag) + " is required");
}

int cmd_keygen(const Options& o, std::ostream& out) {
  const ParamSet p = resolve_params(o);
  require(o.pk, "--pk");
  require(o.sk, "--sk");
  auto rng = make_rng(o);
  const auto keys = scheme::keygen(p, *rng);
  const Bytes pk = io::encode_public_key(keys.pk);
  const Bytes sk = io::encode_secret_key(keys.sk);
  write_file(o.pk, pk);
  write_file(o.sk, sk);

  Report r(format_of(o));
  r.sizes(audit::key_sizes(p));
  r.value("pk_file_bytes", pk.size());
  r.value("pk_payload_bytes", pk.size() - io::kHeaderSize);
  r.value("sk_file_bytes", sk.size());
  out << r.render();
  return kOk;
}

int cmd_encrypt(const Options& o, std::ostream& out) {
  require(o.pk, "--pk");
  require(o.in, "--in");
  require(o.out, "--out");
  const auto pk = io::decode_public_key(read_file(o.pk));
  const Bytes data = read_file(o.in);
  if (data.size() > io::message_capacity(pk.params)) {
    throw ParseError("message of " + std::to_string(data.size()) + " bytes exceeds capacity " +
                     std::to_string(io::message_capacity(pk.params)));
  }
  auto rng = make_rng(o);
  const auto m = io::pack_message(data, pk.params, pk.g_pub.field_ptr());
  const Bytes ct = io::encode_ciphertext(pk.params, scheme::encrypt(pk, m, *rng));
  write_file(o.out, ct);

  Report r(format_of(o));
  r.value("set", pk.params.name);
  r.value("message_bytes", data.size());
  r.value("ciphertext_bytes", ct.size());
  out << r.render();
  return kOk;
}

int cmd_decrypt(const Options& o, std::ostream& out) {
  require(o.sk, "--sk");
  require(o.in, "--in");
  require(o.out, "--out");
  const auto sk = io::decode_secret_key(read_file(o.sk));
  const auto ct = io::decode_ciphertext(read_file(o.in));
  ParamSet a = sk.params, b = ct.params;
  a.name.clear();
  b.name.clear();
  if (!(a == b)) throw ParseError("secret key and ciphertext use different parameters");
  const auto m = scheme::decrypt(sk, ct.c);
  const Bytes data = io::unpack_message(m, sk.params);
  write_file(o.out, data);

  Report r(format_of(o));
  r.value("set", sk.params.name);
  r.value("message_bytes", data.size());
  out << r.render();
  return kOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
  const bool all = o.all || (!o.scrambler && !o.lemmas);
  Report r(format_of(o));
  bool ok = true;
  if (all) {
    const auto rows = audit::reproduce_tables();
    r.table(rows);
    ok &= std::all_of(rows.begin(), rows.end(), [](const audit::TableRow& row) { return row.match(); });
    for (const auto& p : registry()) {
      if (p.variant == Variant::original) {
        const auto f = audit::feasibility(p, p.t);
        r.feasibility(f);
        ok &= !f.feasible;
      }
    }
    for (const auto& p : registry()) {
      if (p.security != 0) r.sizes(audit::key_sizes(p));
    }
  }
  if (o.scrambler || o.lemmas) {
    auto rng = make_rng(o);
    if (o.scrambler) {
      const auto flaw = audit::demonstrate_original_flaw(audit::flaw_demo_params(), *rng, o.trials);
      const auto planted = audit::planted_circulant_instance(gf2m::Field::standard(8), 4, 8, *rng);
      const bool planted_found = audit::systematic_via_circulant(planted).found();
      r.flaw(flaw, planted_found);
      ok &= flaw.circulant_found == 0 && planted_found;
    }
    if (o.lemmas) {
      const auto rows = audit::verify_structure_lemmas(*rng, o.trials);
      r.lemmas(rows);
      ok &= std::all_of(rows.begin(), rows.end(), [](const audit::LemmaResult& l) { return l.ok(); });
    }
  }
  r.value("result", ok ? "match" : "mismatch");
  out << r.render();
  return ok ? kOk : kAuditMismatch;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--seed", o.seed, "32-byte seed as 64 hex characters");
}

void add_params(CLI::App* cmd, Options& o) {
  cmd->add_option("--set", o.set, "Named parameter set");
  cmd->add_option("--variant", o.variant, "improved, repaired or original (with --param)");
  cmd->add_option("--param", o.overrides, "Field override key=value, repeatable");
}

}  // namespace

std::optional<Bytes> parse_seed(const std::string& hex) {
  if (hex.size() != 64) return std::nullopt;
  Bytes out;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    unsigned v = 0;
    for (std::size_t j = i; j < i + 2; ++j) {
      const char c = hex[j];
      v <<= 4;
      if (c >= '0' && c <= '9') {
        v |= static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        v |= static_cast<unsigned>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        v |= static_cast<unsigned>(c - 'A' + 10);
      } else {
        return std::nullopt;
      }
    }
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"GabKron rank-metric encryption toolkit"};
  app.require_subcommand(1);

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  add_params(keygen, o);
  add_common(keygen, o);
  keygen->add_option("--pk", o.pk, "Public key output path");
  keygen->add_option("--sk", o.sk, "Secret key output path");

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a message file");
  add_common(encrypt, o);
  encrypt->add_option("--pk", o.pk, "Public key path");
  encrypt->add_option("--in", o.in, "Message file");
  encrypt->add_option("--out", o.out, "Ciphertext output path");

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  add_common(decrypt, o);
  decrypt->add_option("--sk", o.sk, "Secret key path");
  decrypt->add_option("--in", o.in, "Ciphertext file");
  decrypt->add_option("--out", o.out, "Message output path");

  auto* aud = app.add_subcommand("audit", "Reproduce published tables and structural results");
  add_common(aud, o);
  aud->add_flag("--all", o.all, "Tables, infeasibility and key sizes");
  aud->add_flag("--prop1,--circulant-scrambler", o.scrambler, "Circulant scrambler search over original key generation");
  aud->add_flag("--lemmas", o.lemmas, "Randomized structure lemma suites");
  aud->add_option("--trials", o.trials, "Trials for --prop1 and --lemmas");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }

  try {
    if (*keygen) return cmd_keygen(o, out);
    if (*encrypt) return cmd_encrypt(o, out);
    if (*decrypt) return cmd_decrypt(o, out);
    return cmd_audit(o, out);
  } catch (const ParamViolation& e) {
    err << "parameter violation:\n";
    for (const auto& v : e.violated()) err << "  " << v << "\n";
    return kParamViolation;
  } catch (const DecryptFailure& e) {
    err << "decryption failed: " << e.what() << "\n";
    return kDecodeFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kIoError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace gabkron::cli
