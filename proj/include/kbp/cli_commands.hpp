#ifndef KBP_CLI_COMMANDS_HPP
#define KBP_CLI_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace kbp::cli {

struct GenerateArgs {
  std::string topology;  // udg | bounded-udg | cycle | star
  int n = 0;
  double radius = 0.0;
  std::uint64_t seed = 0;
  int leaves = 0;
  double minDegreeFraction = 0.5;
  std::string outGraph = "graph.edges";
  std::string outLayout = "layout.csv";
  std::string outReport = "report.json";
};

struct RunArgs {
  std::string algorithm;  // kbp | efficient-vm | extended-vm
  std::string graphPath;
  int k = 1;
  int r = 2;
  int bandwidthFactor = 32;
  long long idSpaceBound = 1 << 20;
  std::string faultPlanPath;
  std::string outDir = ".";
  bool trace = false;
};

struct VerifyArgs {
  std::string graphPath;
  std::string placementPath;
  std::string coloringPath;
  std::string schedulePath;
  std::string ledgerPath;
};

struct SweepArgs {
  std::string algorithm;  // kbp | efficient-vm | extended-vm
  int n = 50;
  double radius = 0.3;
  double minDegreeFraction = 0.0;  // >0 switches to the filtered generator
  std::uint64_t seedBase = 1;
  int seedCount = 0;
  std::vector<int> kValues;
  std::vector<int> rValues;
  int bandwidthFactor = 32;
  std::string outCsv = "sweep.csv";
};

void addGenerateCommand(CLI::App& app, GenerateArgs& args);
void addRunCommand(CLI::App& app, RunArgs& args);
void addVerifyCommand(CLI::App& app, VerifyArgs& args);
void addSweepCommand(CLI::App& app, SweepArgs& args);

int cmdGenerate(const GenerateArgs& args);
int cmdRun(const RunArgs& args);
int cmdVerify(const VerifyArgs& args);
int cmdSweep(const SweepArgs& args);

}  // namespace kbp::cli

#endif
