#include "primemeans/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json_codec.hpp"

namespace primemeans {

using codec::ordered_json;

namespace {

constexpr const char* kFormat = "primemeans-checkpoint";

ordered_json state_to_json(const StateRecord& s) {
  ordered_json j;
  j["n"] = s.n;
  j["p_n"] = s.p;
  j["sum_primes"] = to_decimal(s.sum_primes);
  j["theta"] = s.theta_value;
  j["theta_error"] = s.theta_error;
  j["theta_sum"] = s.theta_sum;
  j["theta_compensation"] = s.theta_compensation;
  j["log_error"] = s.log_error;
  if (s.prev_ratio)
    j["prev_ratio"] = {{"value", s.prev_ratio->first}, {"error", s.prev_ratio->second}};
  else
    j["prev_ratio"] = nullptr;
  return j;
}

StateRecord state_from_json(const ordered_json& j) {
  StateRecord s;
  s.n = j.at("n").get<std::uint64_t>();
  s.p = j.at("p_n").get<std::uint64_t>();
  s.sum_primes = parse_u128(j.at("sum_primes").get<std::string>());
  s.theta_value = j.at("theta").get<std::string>();
  s.theta_error = j.at("theta_error").get<std::string>();
  s.theta_sum = j.at("theta_sum").get<std::string>();
  s.theta_compensation = j.at("theta_compensation").get<std::string>();
  s.log_error = j.at("log_error").get<std::string>();
  const ordered_json& pr = j.at("prev_ratio");
  if (!pr.is_null()) s.prev_ratio = {{pr.at("value").get<std::string>(), pr.at("error").get<std::string>()}};
  return s;
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& c) {
  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kCheckpointVersion;
  j["job_hash"] = c.job_hash;
  j["job"] = codec::job_to_json(c.job);
  j["state"] = state_to_json(c.state);
  j["report"] = codec::report_to_json(c.partial, codec::Margins::Exact, false);
  return j.dump(2) + "\n";
}

Checkpoint checkpoint_from_string(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw CheckpointError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) throw CheckpointError("not a primemeans checkpoint");
    const int version = j.at("version").get<int>();
    if (version != kCheckpointVersion)
      throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
    Checkpoint c;
    c.job_hash = j.at("job_hash").get<std::string>();
    c.job = codec::job_from_json(j.at("job"));
    c.state = state_from_json(j.at("state"));
    c.partial = codec::report_from_json(j.at("report"));
    if (c.partial.job_hash != c.job_hash) throw CheckpointError("checkpoint report belongs to a different job");
    return c;
  } catch (const CheckpointError&) {
    throw;
  } catch (const std::exception& e) {
    throw CheckpointError(std::string("checkpoint is malformed: ") + e.what());
  }
}

void write_checkpoint(const std::string& path, const Checkpoint& c) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open checkpoint file '" + tmp + "' for writing");
    out << checkpoint_to_string(c);
    out.flush();
    if (!out) throw std::runtime_error("failed writing checkpoint file '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move checkpoint into place at '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot open checkpoint file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return checkpoint_from_string(buf.str());
}

}  // namespace primemeans
