#include "proofscope/engine.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include "json.hpp"
#include <sstream>

namespace proofscope {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string join(const PremiseSet& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ' ';
    out += n;
  }
  return out;
}

SzsStatus status_of(ProofStatus s) {
  switch (s) {
    case ProofStatus::Theorem: return SzsStatus::Theorem;
    case ProofStatus::CounterSatisfiable: return SzsStatus::CounterSatisfiable;
    case ProofStatus::Unsatisfiable: return SzsStatus::Unsatisfiable;
    case ProofStatus::Satisfiable: return SzsStatus::Satisfiable;
    case ProofStatus::ResourceOut: return SzsStatus::ResourceOut;
    case ProofStatus::GaveUp: return SzsStatus::GaveUp;
  }
  return SzsStatus::Unknown;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- built-in engines -----------------------------------------------------

EngineVerdict BuiltinProverEngine::run(const Theory& t, double budget) const {
  ProverLimits limits;
  limits.wall_clock_budget = budget;
  limits.max_clause_count = max_clause_count_;
  ProofOutcome r = t.has_conjecture() ? prove(t, limits) : refute(t, limits);

  EngineVerdict v;
  v.engine_id = id_;
  v.status = status_of(r.status);
  v.elapsed = r.statistics.elapsed;
  if (v.status == SzsStatus::Theorem || v.status == SzsStatus::Unsatisfiable) {
    v.used_premises = r.used_premises;
    v.premise_info = true;
  }
  // Statistics are left out: under a wall-clock budget they vary between runs.
  v.raw_output_digest = fnv1a_hex("SZS status " + std::string(szs_name(v.status)) + "\nused: " + join(v.used_premises) + "\n");
  return v;
}

EngineVerdict BuiltinModelFinderEngine::run(const Theory& t, double budget) const {
  auto start = Clock::now();
  std::vector<NamedFormula> formulas;
  for (const auto* p : t.premises()) formulas.push_back(NamedFormula{p->name, p->formula});
  if (const auto* c = t.conjecture()) formulas.push_back(NamedFormula{c->name, negate(c->formula)});

  ModelLimits limits;
  limits.max_domain_size = max_domain_size_;
  limits.wall_clock_budget = budget;
  ModelOutcome outcome = find_model(formulas, limits);

  EngineVerdict v;
  v.engine_id = id_;
  switch (outcome.kind) {
    case ModelOutcome::Kind::ModelFound:
      v.status = t.has_conjecture() ? SzsStatus::CounterSatisfiable : SzsStatus::Satisfiable;
      break;
    case ModelOutcome::Kind::ExhaustedUpTo: v.status = SzsStatus::GaveUp; break;
    case ModelOutcome::Kind::ResourceOut: v.status = SzsStatus::ResourceOut; break;
  }
  std::string raw = "SZS status " + std::string(szs_name(v.status)) + "\n";
  if (outcome.model) raw += outcome.model->to_string();
  else raw += "exhausted up to " + std::to_string(outcome.exhausted_size) + "\n";
  v.raw_output_digest = fnv1a_hex(raw);
  v.model = std::move(outcome);
  v.elapsed = seconds_since(start);
  return v;
}

// ---- output parsing -------------------------------------------------------

SzsStatus parse_szs(std::string_view output) {
  constexpr std::string_view marker = "SZS status";
  std::size_t pos = output.find(marker);
  if (pos == std::string_view::npos) return SzsStatus::Unknown;
  std::size_t i = pos + marker.size();
  while (i < output.size() && (output[i] == ' ' || output[i] == '\t')) ++i;
  std::size_t j = i;
  while (j < output.size() && std::isalpha(static_cast<unsigned char>(output[j]))) ++j;
  return parse_szs_name(output.substr(i, j - i));
}

namespace {

std::string_view derivation_region(std::string_view output) {
  std::size_t start = output.find("SZS output start");
  if (start == std::string_view::npos) return output;
  std::size_t end = output.find("SZS output end", start);
  return output.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
}

void skip_space(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

// A TPTP name or single-quoted atom. Empty on failure.
std::string read_name(std::string_view s, std::size_t& i) {
  skip_space(s, i);
  if (i >= s.size()) return {};
  if (s[i] == '\'') {
    std::string out;
    for (++i; i < s.size() && s[i] != '\''; ++i) {
      if (s[i] == '\\' && i + 1 < s.size()) ++i;
      out += s[i];
    }
    if (i >= s.size()) return {};
    ++i;
    return out;
  }
  std::size_t j = i;
  while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '.' ||
                          s[j] == '/' || s[j] == '-' || s[j] == '+'))
    ++j;
  std::string out(s.substr(i, j - i));
  i = j;
  return out;
}

}  // namespace

PremiseSet extract_used_premises(std::string_view output, const Theory& t) {
  std::string_view region = derivation_region(output);
  PremiseSet premises;
  for (const auto& n : t.premise_names()) premises.insert(n);
  PremiseSet used;
  constexpr std::string_view marker = "file(";
  for (std::size_t pos = region.find(marker); pos != std::string_view::npos; pos = region.find(marker, pos + 1)) {
    if (pos > 0 && (std::isalnum(static_cast<unsigned char>(region[pos - 1])) || region[pos - 1] == '_')) continue;
    std::size_t i = pos + marker.size();
    if (read_name(region, i).empty()) continue;
    skip_space(region, i);
    if (i >= region.size() || region[i] != ',') continue;
    ++i;
    std::string name = read_name(region, i);
    skip_space(region, i);
    if (name.empty() || i >= region.size() || region[i] != ')') continue;
    if (premises.contains(name)) used.insert(name);
  }
  return used;
}

bool has_derivation(std::string_view output) {
  return output.find("SZS output start") != std::string_view::npos ||
         output.find("file(") != std::string_view::npos;
}

// ---- external engines -----------------------------------------------------

void EngineSpec::validate() const {
  if (id.empty()) throw EngineConfigError("engine id must not be empty");
  if (executable.empty()) throw EngineConfigError("engine " + id + ": executable must not be empty");
  std::size_t count = 0;
  for (const auto& token : argument_template)
    for (std::size_t p = token.find("{problem}"); p != std::string::npos; p = token.find("{problem}", p + 1)) ++count;
  if (count != 1)
    throw EngineConfigError("engine " + id + ": argument template must contain {problem} exactly once");
}

ExternalEngine::ExternalEngine(EngineSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

namespace {

bool is_executable(const std::filesystem::path& p) {
  struct stat st {};
  return ::stat(p.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(p.c_str(), X_OK) == 0;
}

std::filesystem::path resolve_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (is_executable(name)) return name;
    throw EngineConfigError("engine executable not found or not executable: " + name);
  }
  const char* path = std::getenv("PATH");
  std::string_view dirs = path ? path : "/usr/bin:/bin";
  while (!dirs.empty()) {
    std::size_t colon = dirs.find(':');
    std::string_view dir = dirs.substr(0, colon);
    std::filesystem::path candidate = std::filesystem::path(dir.empty() ? "." : std::string(dir)) / name;
    if (is_executable(candidate)) return candidate;
    if (colon == std::string_view::npos) break;
    dirs.remove_prefix(colon + 1);
  }
  throw EngineConfigError("engine executable not found on PATH: " + name);
}

std::string substitute(std::string token, const std::string& key, const std::string& value) {
  for (std::size_t p = token.find(key); p != std::string::npos; p = token.find(key, p + value.size()))
    token.replace(p, key.size(), value);
  return token;
}

class TempProblem {
 public:
  explicit TempProblem(const std::string& text) {
    std::string pattern = (std::filesystem::temp_directory_path() / "proofscope-XXXXXX.p").string();
    int fd = ::mkstemps(pattern.data(), 2);
    if (fd < 0) throw std::runtime_error("cannot create temporary problem file: " + std::string(std::strerror(errno)));
    path_ = pattern;
    std::size_t off = 0;
    while (off < text.size()) {
      ssize_t n = ::write(fd, text.data() + off, text.size() - off);
      if (n < 0) {
        if (errno == EINTR) continue;
        ::close(fd);
        throw std::runtime_error("cannot write temporary problem file");
      }
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  ~TempProblem() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempProblem(const TempProblem&) = delete;
  TempProblem& operator=(const TempProblem&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

struct ProcessResult {
  std::string output;
  bool timed_out = false;
};

ProcessResult run_process(const std::filesystem::path& exe, const std::vector<std::string>& args, double budget) {
  std::vector<std::string> argv_storage;
  argv_storage.push_back(exe.string());
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  argv.push_back(nullptr);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw std::runtime_error("pipe failed");
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw std::runtime_error("fork failed");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execv(argv[0], argv.data());
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);

  ProcessResult result;
  auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget));
  bool exited = false;
  bool eof = false;
  char buf[4096];
  while (!eof) {
    auto now = Clock::now();
    if (now >= deadline) {
      result.timed_out = !exited;
      break;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
    pollfd p{fds[0], POLLIN, 0};
    int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(remaining + 1, 50)));
    if (rc > 0) {
      ssize_t n = ::read(fds[0], buf, sizeof buf);
      if (n > 0) result.output.append(buf, static_cast<std::size_t>(n));
      else if (n == 0) eof = true;
    }
    if (!exited) {
      int status = 0;
      if (::waitpid(pid, &status, WNOHANG) == pid) exited = true;
    }
    // A finished engine may leave children holding the pipe open; drain what is buffered and stop.
    if (exited && rc == 0) break;
  }
  ::kill(-pid, SIGKILL);
  if (!exited) ::waitpid(pid, nullptr, 0);
  // Collect anything written before the kill without blocking on stray writers.
  ::fcntl(fds[0], F_SETFL, O_NONBLOCK);
  for (;;) {
    ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n <= 0) break;
    result.output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  return result;
}

}  // namespace

void ExternalEngine::check_available() const { resolve_executable(spec_.executable); }

EngineVerdict ExternalEngine::run(const Theory& t, double budget) const {
  auto exe = resolve_executable(spec_.executable);
  auto start = Clock::now();
  TempProblem problem(render_theory(t));
  std::string timeout = std::to_string(static_cast<long long>(std::ceil(budget)));
  std::vector<std::string> args;
  for (const auto& token : spec_.argument_template)
    args.push_back(substitute(substitute(token, "{problem}", problem.path().string()), "{timeout}", timeout));

  ProcessResult r = run_process(exe, args, budget);

  EngineVerdict v;
  v.engine_id = spec_.id;
  v.status = parse_szs(r.output);
  if (r.timed_out && v.status == SzsStatus::Unknown) v.status = SzsStatus::Timeout;
  if (v.status == SzsStatus::Theorem || v.status == SzsStatus::Unsatisfiable) {
    v.premise_info = has_derivation(r.output);
    if (v.premise_info) v.used_premises = extract_used_premises(r.output, t);
  }
  v.raw_output_digest = fnv1a_hex(r.output);
  v.elapsed = seconds_since(start);
  return v;
}

// ---- configuration --------------------------------------------------------

std::vector<EngineSpec> parse_engine_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw EngineConfigError(std::string("engine config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("engines") || !doc["engines"].is_array())
    throw EngineConfigError("engine config must be an object with an \"engines\" array");
  std::vector<EngineSpec> out;
  for (const auto& e : doc["engines"]) {
    try {
      EngineSpec spec;
      spec.id = e.at("id").get<std::string>();
      spec.executable = e.at("executable").get<std::string>();
      spec.argument_template = e.at("arguments").get<std::vector<std::string>>();
      auto caps = e.value("capabilities", std::vector<std::string>{"proves"});
      spec.proves = false;
      for (const auto& c : caps) {
        if (c == "proves") spec.proves = true;
        else if (c == "finds_models") spec.finds_models = true;
        else throw EngineConfigError("engine " + spec.id + ": unknown capability " + c);
      }
      spec.szs_expected = e.value("szs", true);
      spec.validate();
      out.push_back(std::move(spec));
    } catch (const nlohmann::json::exception& ex) {
      throw EngineConfigError(std::string("malformed engine entry: ") + ex.what());
    }
  }
  return out;
}

std::vector<EngineSpec> load_engine_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EngineConfigError("cannot read engine config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_engine_config(ss.str());
}

}  // namespace proofscope
