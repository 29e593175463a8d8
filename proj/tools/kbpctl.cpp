// Command-line front end: topology generation, algorithm runs, artifact
// verification, and parameter sweeps.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kbp/cli_commands.hpp"
#include "kbp/errors.hpp"

namespace {

// Exit codes: 0 success, 1 invariant violation, 2 usage error, 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-backup placement and virtual-memory scheduling toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; flags override");

  kbp::cli::GenerateArgs generateArgs;
  kbp::cli::addGenerateCommand(app, generateArgs);
  kbp::cli::RunArgs runArgs;
  kbp::cli::addRunCommand(app, runArgs);
  kbp::cli::VerifyArgs verifyArgs;
  kbp::cli::addVerifyCommand(app, verifyArgs);
  kbp::cli::SweepArgs sweepArgs;
  kbp::cli::addSweepCommand(app, sweepArgs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand("generate")) return kbp::cli::cmdGenerate(generateArgs);
    if (app.got_subcommand("run")) return kbp::cli::cmdRun(runArgs);
    if (app.got_subcommand("verify")) return kbp::cli::cmdVerify(verifyArgs);
    if (app.got_subcommand("sweep")) return kbp::cli::cmdSweep(sweepArgs);
  } catch (const kbp::ValidationError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const kbp::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kbp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitIo;
  } catch (const kbp::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
