#include "kbp/cli_commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kbp/congest.hpp"
#include "kbp/errors.hpp"
#include "kbp/graph.hpp"
#include "kbp/io.hpp"
#include "kbp/oracle.hpp"
#include "kbp/placement.hpp"
#include "kbp/vm_sched.hpp"

namespace kbp::cli {

namespace {

std::ofstream openOut(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream openIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

Graph loadGraph(const std::string& path) {
  auto in = openIn(path);
  return loadEdgeList(in);
}

double shareToDouble(const Share& s) {
  return static_cast<double>(s.numerator()) / static_cast<double>(s.denominator());
}

std::string shareToText(const Share& s) {
  if (s.denominator() == 1) return std::to_string(s.numerator());
  return std::to_string(s.numerator()) + "/" + std::to_string(s.denominator());
}

}  // namespace

void addGenerateCommand(CLI::App& app, GenerateArgs& args) {
  CLI::App* cmd = app.add_subcommand("generate", "generate a topology and its report");
  cmd->require_subcommand(1);

  auto addOutputs = [&](CLI::App* sub, bool geometric) {
    sub->add_option("--out-graph", args.outGraph, "edge-list output path");
    sub->add_option("--out-report", args.outReport, "structural report JSON path");
    if (geometric) sub->add_option("--out-layout", args.outLayout, "layout CSV path");
  };

  CLI::App* udg = cmd->add_subcommand("udg", "random unit-disk graph");
  udg->add_option("--n", args.n, "node count")->required();
  udg->add_option("--radius", args.radius, "connection radius")->required();
  udg->add_option("--seed", args.seed, "PRNG seed");
  udg->callback([&args] { args.topology = "udg"; });
  addOutputs(udg, true);

  CLI::App* bounded = cmd->add_subcommand("bounded-udg",
                                          "unit-disk graph filtered to minDegree >= fraction*maxDegree");
  bounded->add_option("--n", args.n)->required();
  bounded->add_option("--radius", args.radius)->required();
  bounded->add_option("--seed", args.seed);
  bounded->add_option("--min-degree-fraction", args.minDegreeFraction);
  bounded->callback([&args] { args.topology = "bounded-udg"; });
  addOutputs(bounded, true);

  CLI::App* cycle = cmd->add_subcommand("cycle", "cycle graph");
  cycle->add_option("--n", args.n)->required();
  cycle->callback([&args] { args.topology = "cycle"; });
  addOutputs(cycle, false);

  CLI::App* star = cmd->add_subcommand("star", "star graph");
  star->add_option("--leaves", args.leaves)->required();
  star->callback([&args] { args.topology = "star"; });
  addOutputs(star, false);
}

void addRunCommand(CLI::App& app, RunArgs& args) {
  CLI::App* cmd = app.add_subcommand("run", "run an algorithm and export artifacts");
  cmd->require_subcommand(1);

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--graph", args.graphPath, "edge-list input")->required();
    sub->add_option("--out-dir", args.outDir, "artifact output directory");
    sub->add_option("--bandwidth-factor", args.bandwidthFactor);
    sub->add_option("--id-space", args.idSpaceBound, "ID-space bound for coloring");
  };

  CLI::App* kbpCmd = cmd->add_subcommand("kbp", "one-round K-backup placement");
  kbpCmd->add_option("--k", args.k, "backups per node")->required();
  kbpCmd->add_option("--fault-plan", args.faultPlanPath, "CSV node,round crash plan");
  kbpCmd->add_flag("--trace", args.trace, "export message trace JSONL");
  kbpCmd->callback([&args] { args.algorithm = "kbp"; });
  addCommon(kbpCmd);

  CLI::App* eff = cmd->add_subcommand("efficient-vm", "color-class virtual memory schedule");
  eff->add_option("--k", args.k)->required();
  eff->callback([&args] { args.algorithm = "efficient-vm"; });
  addCommon(eff);

  CLI::App* ext = cmd->add_subcommand("extended-vm", "super-class virtual memory schedule");
  ext->add_option("--r", args.r, "super-class count")->required();
  ext->callback([&args] { args.algorithm = "extended-vm"; });
  addCommon(ext);
}

void addVerifyCommand(CLI::App& app, VerifyArgs& args) {
  CLI::App* cmd = app.add_subcommand("verify", "re-check artifact invariants");
  cmd->add_option("--graph", args.graphPath)->required();
  cmd->add_option("--placement", args.placementPath);
  cmd->add_option("--coloring", args.coloringPath);
  cmd->add_option("--schedule", args.schedulePath);
  cmd->add_option("--ledger", args.ledgerPath);
}

void addSweepCommand(CLI::App& app, SweepArgs& args) {
  CLI::App* cmd = app.add_subcommand("sweep", "parameter sweep over seeded UDG instances");
  cmd->add_option("--algorithm", args.algorithm)
      ->required()
      ->check(CLI::IsMember({"kbp", "efficient-vm", "extended-vm"}));
  cmd->add_option("--n", args.n);
  cmd->add_option("--radius", args.radius);
  cmd->add_option("--min-degree-fraction", args.minDegreeFraction,
                  "when > 0, use the degree-filtered generator");
  cmd->add_option("--seed-base", args.seedBase);
  cmd->add_option("--seeds", args.seedCount, "number of seeds")->required();
  cmd->add_option("--k-values", args.kValues)->delimiter(',');
  cmd->add_option("--r-values", args.rValues)->delimiter(',');
  cmd->add_option("--bandwidth-factor", args.bandwidthFactor);
  cmd->add_option("--out", args.outCsv);
}

int cmdGenerate(const GenerateArgs& args) {
  Graph g;
  GeometricLayout layout;
  bool geometric = false;
  if (args.topology == "udg") {
    std::tie(g, layout) = generateUDG(args.n, args.radius, args.seed);
    geometric = true;
  } else if (args.topology == "bounded-udg") {
    std::tie(g, layout) =
        generateBoundedGrowthUDG(args.n, args.radius, args.seed, args.minDegreeFraction);
    geometric = true;
  } else if (args.topology == "cycle") {
    g = generateCycle(args.n);
  } else if (args.topology == "star") {
    g = generateStar(args.leaves);
  } else {
    throw ParameterError("unknown topology '" + args.topology + "'");
  }

  {
    auto out = openOut(args.outGraph);
    writeEdgeList(out, g);
  }
  if (geometric) {
    auto out = openOut(args.outLayout);
    writeLayoutCsv(out, layout);
  }
  {
    auto out = openOut(args.outReport);
    writeStructuralReportJson(out, analyzeGraph(g));
  }
  return 0;
}

int cmdRun(const RunArgs& args) {
  Graph g = loadGraph(args.graphPath);
  const std::string dir = args.outDir + "/";
  nlohmann::json summary;
  summary["algorithm"] = args.algorithm;

  VmOptions vmOptions;
  vmOptions.coloring.bandwidthFactor = args.bandwidthFactor;
  vmOptions.coloring.idSpaceBound = args.idSpaceBound;

  if (args.algorithm == "kbp") {
    RunOptions runOptions;
    runOptions.bandwidthFactor = args.bandwidthFactor;
    runOptions.captureTrace = args.trace;
    auto [placement, run] = runKBP(g, args.k, runOptions);
    int c = neighborhoodIndependence(g);
    LoadReport loads = computeLoads(g, placement, c);

    {
      auto out = openOut(dir + "placement.json");
      writePlacementJson(out, placement);
    }
    {
      auto out = openOut(dir + "loads.csv");
      writeLoadsCsv(out, loads);
    }
    if (args.trace) {
      auto out = openOut(dir + "trace.jsonl");
      writeTraceJsonl(out, run.trace);
    }
    summary["roundsUsed"] = run.roundsUsed;
    summary["maxLoad"] = loads.maxLoad;
    summary["cTimesK"] = loads.cTimesK;
    summary["c"] = c;
    summary["k"] = args.k;

    if (!args.faultPlanPath.empty()) {
      auto in = openIn(args.faultPlanPath);
      FaultPlan plan = FaultPlan::loadCsv(in);
      std::set<NodeId> crashed;
      for (const auto& [v, round] : plan.crashRoundOf) crashed.insert(v);
      auto surviving = survivability(g, placement, crashed);
      int withBackup = 0;
      for (const auto& [v, count] : surviving)
        if (count >= 1) ++withBackup;
      summary["liveNodes"] = surviving.size();
      summary["liveNodesWithBackup"] = withBackup;
    }
  } else if (args.algorithm == "efficient-vm") {
    EfficientVmResult result = efficientVM(g, args.k, vmOptions);
    int c = neighborhoodIndependence(g);
    LoadReport loads = computeLoads(g, result.placement, c);
    {
      auto out = openOut(dir + "placement.json");
      writePlacementJson(out, result.placement);
    }
    {
      auto out = openOut(dir + "coloring.csv");
      writeColoringCsv(out, result.coloring);
    }
    {
      auto out = openOut(dir + "schedule.json");
      writeScheduleJson(out, result.schedule);
    }
    {
      auto out = openOut(dir + "ledger.csv");
      writeLedgerCsv(out, result.ledger);
    }
    LedgerSummary gains = ledgerReport(result.ledger);
    summary["roundsUsed"] = result.schedule.totalRounds;
    summary["maxLoad"] = loads.maxLoad;
    summary["cTimesK"] = loads.cTimesK;
    summary["c"] = c;
    summary["k"] = args.k;
    summary["phaseCount"] = result.schedule.phases.size();
    summary["minGain"] = shareToDouble(gains.minGain);
    summary["medianGain"] = shareToDouble(gains.medianGain);
    summary["maxGain"] = shareToDouble(gains.maxGain);
  } else if (args.algorithm == "extended-vm") {
    ExtendedVmResult result = extendedVM(g, args.r, vmOptions);
    {
      auto out = openOut(dir + "coloring.csv");
      writeColoringCsv(out, result.coloring);
    }
    {
      auto out = openOut(dir + "partition.csv");
      writePartitionCsv(out, result.partition);
    }
    {
      auto out = openOut(dir + "schedule.json");
      writeScheduleJson(out, result.schedule);
    }
    {
      auto out = openOut(dir + "ledger.csv");
      writeLedgerCsv(out, result.ledger);
    }
    LedgerSummary gains = ledgerReport(result.ledger);
    summary["roundsUsed"] = result.schedule.totalRounds;
    summary["R"] = args.r;
    summary["phaseCount"] = result.schedule.phases.size();
    summary["minGain"] = shareToDouble(gains.minGain);
    summary["medianGain"] = shareToDouble(gains.medianGain);
    summary["maxGain"] = shareToDouble(gains.maxGain);
    summary["medianGainExact"] = shareToText(gains.medianGain);
    if (!result.starvedNodes.empty()) {
      summary["starvedNodes"] = result.starvedNodes;
      std::cerr << "warning: " << result.starvedNodes.size()
                << " node(s) have zero virtual memory (all neighbors share their super-class)\n";
    }
  } else {
    throw ParameterError("unknown algorithm '" + args.algorithm + "'");
  }

  auto out = openOut(dir + "summary.json");
  out << summary.dump(2) << "\n";
  return 0;
}

int cmdVerify(const VerifyArgs& args) {
  Graph g = loadGraph(args.graphPath);
  bool allPass = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << name << ": " << (pass ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!pass) allPass = false;
  };

  Placement placement;
  bool havePlacement = false;
  if (!args.placementPath.empty()) {
    auto in = openIn(args.placementPath);
    placement = readPlacementJson(in);
    havePlacement = true;
    try {
      validatePlacement(g, placement);
      report("placement-valid", true);
    } catch (const ValidationError& e) {
      report("placement-valid", false, e.what());
    }
    try {
      int c = neighborhoodIndependence(g);
      LoadReport loads = computeLoads(g, placement, c);
      report("load-bound", loads.maxLoad <= loads.cTimesK,
             "maxLoad=" + std::to_string(loads.maxLoad) +
                 " cK=" + std::to_string(loads.cTimesK));
    } catch (const std::exception& e) {
      report("load-bound", false, e.what());
    }
  }

  Coloring coloring;
  bool haveColoring = false;
  if (!args.coloringPath.empty()) {
    auto in = openIn(args.coloringPath);
    coloring = readColoringCsv(in);
    haveColoring = true;
    // 2-hop colorings from the efficient-vm pipeline color the selection
    // subgraph, not the input graph.
    const Graph* target = &g;
    Graph selection;
    if (coloring.hopRadius == 2 && havePlacement) {
      selection = selectionSubgraph(g, placement);
      target = &selection;
    }
    try {
      report("coloring-proper", verifyColoring(*target, coloring));
    } catch (const ValidationError& e) {
      report("coloring-proper", false, e.what());
    }
  }

  if (!args.schedulePath.empty()) {
    auto in = openIn(args.schedulePath);
    Schedule schedule = readScheduleJson(in);
    const Share memory{1};

    bool exclusivityOk = true;
    bool overcommitOk = true;
    std::map<NodeId, Share> virtualOf;
    for (NodeId v : g.nodes()) virtualOf[v] = Share{0};
    for (const Phase& phase : schedule.phases) {
      std::map<NodeId, int> selectorsOf;
      for (const auto& [v, u] : phase.backupEdges) ++selectorsOf[u];
      if (schedule.algorithm == VmAlgorithm::EfficientVM) {
        for (const auto& [u, count] : selectorsOf)
          if (count > 1) exclusivityOk = false;
        for (const auto& [v, u] : phase.backupEdges) virtualOf[v] += memory;
        for (const auto& [u, count] : selectorsOf)
          if (Share{count} * memory > memory) overcommitOk = false;
      } else {
        for (const auto& [v, u] : phase.backupEdges)
          virtualOf[v] += memory / selectorsOf.at(u);
        // Equal split can never exceed the target's memory.
      }
    }
    if (schedule.algorithm == VmAlgorithm::EfficientVM)
      report("phase-exclusivity", exclusivityOk);
    report("ledger-overcommit", overcommitOk);

    if (!args.ledgerPath.empty()) {
      auto in2 = openIn(args.ledgerPath);
      MemoryLedger ledger = readLedgerCsv(in2, memory);
      bool consistent = true;
      for (const auto& [v, vm] : ledger.virtualOf)
        if (virtualOf.count(v) == 0 || virtualOf.at(v) != vm) consistent = false;
      report("ledger-consistency", consistent);
    }
  }

  if (!havePlacement && !haveColoring && args.schedulePath.empty())
    throw ParameterError("nothing to verify; pass --placement/--coloring/--schedule");
  return allPass ? 0 : 1;
}

int cmdSweep(const SweepArgs& args) {
  if (args.seedCount < 1) throw ParameterError("need at least one seed");
  const bool usesK = args.algorithm == "kbp" || args.algorithm == "efficient-vm";
  const std::vector<int>& params = usesK ? args.kValues : args.rValues;
  if (params.empty())
    throw ParameterError(std::string("empty ") + (usesK ? "--k-values" : "--r-values"));

  auto out = openOut(args.outCsv);
  out << "algorithm,seed,param,n,m,maxDegree,minDegree,c,rounds,maxLoad,cTimesK,"
         "minGain,medianGain,phaseCount\n";

  VmOptions vmOptions;
  vmOptions.coloring.bandwidthFactor = args.bandwidthFactor;

  for (int s = 0; s < args.seedCount; ++s) {
    std::uint64_t seed = args.seedBase + static_cast<std::uint64_t>(s);
    auto [g, layout] =
        args.minDegreeFraction > 0.0
            ? generateBoundedGrowthUDG(args.n, args.radius, seed, args.minDegreeFraction)
            : generateUDG(args.n, args.radius, seed);
    int c = neighborhoodIndependence(g);

    for (int param : params) {
      out << args.algorithm << "," << seed << "," << param << "," << g.nodeCount() << ","
          << g.edgeCount() << "," << g.maxDegree() << "," << g.minDegree() << "," << c;
      if (args.algorithm == "kbp") {
        RunOptions runOptions;
        runOptions.bandwidthFactor = args.bandwidthFactor;
        auto [placement, run] = runKBP(g, param, runOptions);
        LoadReport loads = computeLoads(g, placement, c);
        out << "," << run.roundsUsed << "," << loads.maxLoad << "," << loads.cTimesK
            << ",,,\n";
      } else if (args.algorithm == "efficient-vm") {
        EfficientVmResult result = efficientVM(g, param, vmOptions);
        LoadReport loads = computeLoads(g, result.placement, c);
        LedgerSummary gains = ledgerReport(result.ledger);
        out << "," << result.schedule.totalRounds << "," << loads.maxLoad << ","
            << loads.cTimesK << "," << shareToDouble(gains.minGain) << ","
            << shareToDouble(gains.medianGain) << "," << result.schedule.phases.size()
            << "\n";
      } else {
        ExtendedVmResult result = extendedVM(g, param, vmOptions);
        LedgerSummary gains = ledgerReport(result.ledger);
        out << "," << result.schedule.totalRounds << ",,," << shareToDouble(gains.minGain)
            << "," << shareToDouble(gains.medianGain) << "," << result.schedule.phases.size()
            << "\n";
      }
    }
  }
  return 0;
}

}  // namespace kbp::cli
