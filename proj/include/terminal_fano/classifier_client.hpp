#pragma once

// File-based bridge to an external terminality classifier.
//
// The endpoint is an executable invoked as
//
//     <endpoint> <candidates-file> <probabilities-file>
//
// where the candidates file holds one weight matrix per line in text form
// (`a_1,...,a_N;b_1,...,b_N`) and the endpoint must write one probability in
// [0, 1] per input line, in order, to the probabilities file.

#include "terminal_fano/weights.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

extern char** environ;

namespace terminal_fano {

inline constexpr const char* kClassifierEnv = "TERMINAL_FANO_CLASSIFIER";

class classifier_unavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ClassifierClient {
 public:
  /// An empty endpoint falls back to $TERMINAL_FANO_CLASSIFIER. Throws
  /// classifier_unavailable if neither names an executable file.
  explicit ClassifierClient(std::string endpoint) : endpoint_(std::move(endpoint)) {
    if (endpoint_.empty())
      if (const char* env = std::getenv(kClassifierEnv)) endpoint_ = env;
    if (endpoint_.empty()) throw classifier_unavailable("no classifier endpoint configured");
    if (::access(endpoint_.c_str(), X_OK) != 0)
      throw classifier_unavailable("classifier endpoint is not an executable file: " + endpoint_);
  }

  const std::string& endpoint() const { return endpoint_; }

  std::vector<double> predict(const std::vector<StandardWeightMatrix>& batch) const {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    const fs::path dir = fs::temp_directory_path() /
                         ("terminal-fano-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir);
    struct Cleanup {
      fs::path p;
      ~Cleanup() {
        std::error_code ec;
        fs::remove_all(p, ec);
      }
    } cleanup{dir};

    const fs::path in = dir / "candidates.txt", out = dir / "probabilities.txt";
    {
      std::ofstream os(in);
      for (const auto& w : batch) os << format_text(w.matrix()) << '\n';
      if (!os) throw std::runtime_error("cannot write classifier candidates to " + in.string());
    }

    std::string exe = endpoint_, in_s = in.string(), out_s = out.string();
    std::vector<char*> argv{exe.data(), in_s.data(), out_s.data(), nullptr};
    pid_t pid;
    if (::posix_spawn(&pid, endpoint_.c_str(), nullptr, nullptr, argv.data(), environ) != 0)
      throw classifier_unavailable("cannot start classifier endpoint " + endpoint_);
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
      throw classifier_unavailable("classifier endpoint failed: " + endpoint_);

    std::ifstream is(out);
    if (!is) throw classifier_unavailable("classifier wrote no probabilities file");
    std::vector<double> probs;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      double p = 0;
      try {
        p = std::stod(line);
      } catch (const std::exception&) {
        throw classifier_unavailable("classifier returned a malformed probability: " + line);
      }
      if (!(p >= 0 && p <= 1)) throw classifier_unavailable("classifier probability outside [0,1]: " + line);
      probs.push_back(p);
    }
    if (probs.size() != batch.size())
      throw classifier_unavailable("classifier returned " + std::to_string(probs.size()) + " probabilities for " +
                                   std::to_string(batch.size()) + " candidates");
    return probs;
  }

 private:
  std::string endpoint_;
};

}  // namespace terminal_fano
