#include "kbp/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "kbp/errors.hpp"

namespace kbp {

namespace {

bool isPrime(long long x) {
  if (x < 2) return false;
  for (long long d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

long long smallestPrimeAtLeast(long long x) {
  long long p = std::max<long long>(x, 2);
  while (!isPrime(p)) ++p;
  return p;
}

// Smallest r with r^e >= n.
long long nthRootCeil(long long n, int e) {
  if (n <= 1) return 1;
  long long r = static_cast<long long>(std::floor(std::pow(static_cast<double>(n),
                                                           1.0 / e))) - 2;
  r = std::max<long long>(r, 1);
  auto powAtLeast = [&](long long base) {
    long long acc = 1;
    for (int i = 0; i < e; ++i) {
      if (acc > n / base + 1) return true;
      acc *= base;
      if (acc >= n) return true;
    }
    return acc >= n;
  };
  while (!powAtLeast(r)) ++r;
  return r;
}

struct ReductionStep {
  long long q = 0;      // field size, prime
  int polyDegree = 0;   // k: polynomials of degree <= k encode old colors
};

// One step maps a palette of size N to q^2 where q is the smallest prime
// >= max(maxDegree*k + 1, N^(1/(k+1))), minimized over k. Distinct old
// colors give polynomials agreeing on <= k points, and each node has at
// most maxDegree*k conflict points to dodge, so a free evaluation point
// always exists.
std::vector<ReductionStep> reductionSchedule(long long initialPalette,
                                             std::size_t maxDegree,
                                             long long* finalPalette) {
  std::vector<ReductionStep> steps;
  long long n = initialPalette;
  const long long deg = static_cast<long long>(maxDegree);
  for (;;) {
    long long bestNew = n;
    ReductionStep best;
    for (int k = 1; k <= 60; ++k) {
      long long q = smallestPrimeAtLeast(std::max(deg * k + 1, nthRootCeil(n, k + 1)));
      if (q > (1LL << 31)) break;
      long long candidate = q * q;
      if (candidate < bestNew) {
        bestNew = candidate;
        best = {q, k};
      }
    }
    if (bestNew >= n) break;
    steps.push_back(best);
    n = bestNew;
  }
  *finalPalette = n;
  return steps;
}

long long polyEval(const std::vector<long long>& coeffs, long long a, long long q) {
  long long acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = (acc * a + *it) % q;
  return acc;
}

// New color of a node with old color `mine` given old neighbor colors.
long long reduceColor(long long mine, const std::vector<long long>& neighborColors,
                      const ReductionStep& step) {
  const long long q = step.q;
  const int digits = step.polyDegree + 1;
  auto toCoeffs = [&](long long x) {
    std::vector<long long> c(static_cast<std::size_t>(digits));
    for (int i = 0; i < digits; ++i) {
      c[static_cast<std::size_t>(i)] = x % q;
      x /= q;
    }
    return c;
  };
  std::vector<long long> self = toCoeffs(mine);
  std::vector<std::vector<long long>> others;
  others.reserve(neighborColors.size());
  for (long long y : neighborColors)
    if (y != mine) others.push_back(toCoeffs(y));

  for (long long a = 0; a < q; ++a) {
    long long selfVal = polyEval(self, a, q);
    bool clash = false;
    for (const auto& other : others)
      if (polyEval(other, a, q) == selfVal) {
        clash = true;
        break;
      }
    if (!clash) return a * q + selfVal;
  }
  throw ProtocolError("color reduction found no free evaluation point");
}

std::size_t bytesFor(long long maxValue) {
  std::size_t b = 1;
  while (maxValue >= (1LL << (8 * b))) ++b;
  return b;
}

void packValue(std::vector<std::uint8_t>& out, long long v, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i)
    out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

long long unpackValue(const std::uint8_t* data, std::size_t width) {
  long long v = 0;
  for (std::size_t i = 0; i < width; ++i)
    v |= static_cast<long long>(data[i]) << (8 * i);
  return v;
}

// --- 1-hop reduction as a node program ---------------------------------

class LinialProcess : public NodeProcess {
 public:
  LinialProcess(NodeId self, const std::vector<ReductionStep>* schedule,
                std::size_t colorBytes)
      : color_(self), schedule_(schedule), colorBytes_(colorBytes) {}

  StepResult step(const NodeContext& ctx) override {
    StepResult result;
    const int totalSteps = static_cast<int>(schedule_->size());
    if (ctx.round > 0) {
      std::vector<long long> neighborColors;
      for (const Message& m : *ctx.inbox)
        neighborColors.push_back(unpackValue(m.payload.data(), colorBytes_));
      color_ = reduceColor(color_, neighborColors, (*schedule_)[static_cast<std::size_t>(ctx.round - 1)]);
    }
    if (ctx.round < totalSteps) {
      for (NodeId u : *ctx.neighbors) {
        Message msg;
        msg.dst = u;
        packValue(msg.payload, color_, colorBytes_);
        result.outgoing.push_back(std::move(msg));
      }
    } else {
      result.halt = true;
    }
    return result;
  }

  std::vector<std::int64_t> output() const override { return {color_}; }

 private:
  long long color_;
  const std::vector<ReductionStep>* schedule_;
  std::size_t colorBytes_;
};

// --- 2-hop reduction with chunked neighbor relays -----------------------

class Distance2Process : public NodeProcess {
 public:
  struct Params {
    const std::vector<ReductionStep>* schedule = nullptr;
    std::size_t colorBytes = 0;
    std::size_t idBytes = 0;
    int chunkRounds = 0;       // relay rounds per iteration
    std::size_t entriesPerChunk = 0;
  };

  Distance2Process(NodeId self, Params params) : self_(self), color_(self), params_(params) {}

  StepResult step(const NodeContext& ctx) override {
    StepResult result;
    const int period = 1 + params_.chunkRounds;
    const int totalSteps = static_cast<int>(params_.schedule->size());
    const int phase = ctx.round % period;
    const int iteration = ctx.round / period;

    if (phase == 0) {
      if (iteration > 0) {
        // Fold in the final relay chunk, then reduce on the collected
        // distance-<=2 colors.
        absorbRelays(ctx);
        std::vector<long long> others;
        for (const auto& [id, c] : twoHopColors_)
          if (id != self_) others.push_back(c);
        color_ = reduceColor(color_, others,
                             (*params_.schedule)[static_cast<std::size_t>(iteration - 1)]);
        twoHopColors_.clear();
        directColors_.clear();
      }
      if (iteration == totalSteps) {
        result.halt = true;
        return result;
      }
      for (NodeId u : *ctx.neighbors) {
        Message msg;
        msg.dst = u;
        packValue(msg.payload, color_, params_.colorBytes);
        result.outgoing.push_back(std::move(msg));
      }
      return result;
    }

    if (phase == 1) {
      // Inbox holds the neighbors' own colors sent at the iteration start.
      for (const Message& m : *ctx.inbox) {
        long long c = unpackValue(m.payload.data(), params_.colorBytes);
        directColors_.emplace_back(m.src, c);
        twoHopColors_[m.src] = c;
      }
    } else {
      absorbRelays(ctx);
    }

    // Relay chunk (phase-1) of the direct-neighbor color list.
    std::size_t begin = static_cast<std::size_t>(phase - 1) * params_.entriesPerChunk;
    std::size_t end = std::min(begin + params_.entriesPerChunk, directColors_.size());
    if (begin < end) {
      std::vector<std::uint8_t> payload;
      for (std::size_t i = begin; i < end; ++i) {
        packValue(payload, directColors_[i].first, params_.idBytes);
        packValue(payload, directColors_[i].second, params_.colorBytes);
      }
      for (NodeId u : *ctx.neighbors) {
        Message msg;
        msg.dst = u;
        msg.payload = payload;
        result.outgoing.push_back(std::move(msg));
      }
    }
    return result;
  }

  std::vector<std::int64_t> output() const override { return {color_}; }

 private:
  void absorbRelays(const NodeContext& ctx) {
    const std::size_t entryBytes = params_.idBytes + params_.colorBytes;
    for (const Message& m : *ctx.inbox)
      for (std::size_t off = 0; off + entryBytes <= m.payload.size(); off += entryBytes) {
        NodeId id = unpackValue(m.payload.data() + off, params_.idBytes);
        long long c = unpackValue(m.payload.data() + off + params_.idBytes,
                                  params_.colorBytes);
        if (id != self_) twoHopColors_[id] = c;
      }
  }

  NodeId self_;
  long long color_;
  Params params_;
  std::vector<std::pair<NodeId, long long>> directColors_;
  std::map<NodeId, long long> twoHopColors_;
};

// --- color elimination ---------------------------------------------------

class EliminationProcess : public NodeProcess {
 public:
  EliminationProcess(long long color, std::map<NodeId, long long> neighborColors,
                     int startColorCount, int eliminationRounds, std::size_t maxDegree,
                     std::size_t colorBytes)
      : color_(color),
        neighborColors_(std::move(neighborColors)),
        startColorCount_(startColorCount),
        eliminationRounds_(eliminationRounds),
        maxDegree_(maxDegree),
        colorBytes_(colorBytes) {}

  StepResult step(const NodeContext& ctx) override {
    StepResult result;
    for (const Message& m : *ctx.inbox)
      neighborColors_[m.src] = unpackValue(m.payload.data(), colorBytes_);

    long long eliminated = startColorCount_ - 1 - ctx.round;
    if (color_ == eliminated) {
      std::vector<char> used(maxDegree_ + 2, 0);
      for (const auto& [id, c] : neighborColors_)
        if (c >= 0 && c <= static_cast<long long>(maxDegree_))
          used[static_cast<std::size_t>(c)] = 1;
      long long fresh = 0;
      while (used[static_cast<std::size_t>(fresh)]) ++fresh;
      color_ = fresh;
      for (NodeId u : *ctx.neighbors) {
        Message msg;
        msg.dst = u;
        packValue(msg.payload, color_, colorBytes_);
        result.outgoing.push_back(std::move(msg));
      }
    }
    if (ctx.round == eliminationRounds_ - 1) result.halt = true;
    return result;
  }

  std::vector<std::int64_t> output() const override { return {color_}; }

 private:
  long long color_;
  std::map<NodeId, long long> neighborColors_;
  int startColorCount_;
  int eliminationRounds_;
  std::size_t maxDegree_;
  std::size_t colorBytes_;
};

void checkIdSpace(const Graph& g, const ColoringOptions& options) {
  for (NodeId v : g.nodes())
    if (v > options.idSpaceBound)
      throw ParameterError("node ID " + std::to_string(v) + " exceeds idSpaceBound " +
                           std::to_string(options.idSpaceBound));
}

Coloring trivialColoring(const Graph& g, int hopRadius) {
  Coloring col;
  for (NodeId v : g.nodes()) col.colors[v] = 0;
  col.colorCount = 1;
  col.hopRadius = hopRadius;
  col.roundsUsed = 0;
  return col;
}

}  // namespace

long long linialColorBound(std::size_t maxDegree) {
  long long p = smallestPrimeAtLeast(2 * static_cast<long long>(maxDegree) + 1);
  return p * p;
}

int iteratedLog2(long long x) {
  int count = 0;
  double v = static_cast<double>(x);
  while (v > 2.0) {
    v = std::log2(v);
    ++count;
  }
  return count;
}

Coloring linialColoring(const Graph& g, const ColoringOptions& options) {
  checkIdSpace(g, options);
  if (g.edgeCount() == 0) return trivialColoring(g, 1);

  long long finalPalette = 0;
  auto schedule = reductionSchedule(options.idSpaceBound + 1, g.maxDegree(), &finalPalette);
  const std::size_t colorBytes = bytesFor(options.idSpaceBound);

  Coloring col;
  col.hopRadius = 1;
  col.colorCount = static_cast<int>(finalPalette);
  if (schedule.empty()) {
    for (NodeId v : g.nodes()) col.colors[v] = static_cast<int>(v);
    col.roundsUsed = 0;
    return col;
  }

  ProgramFactory factory = [&](NodeId v, const std::vector<NodeId>&) {
    return std::make_unique<LinialProcess>(v, &schedule, colorBytes);
  };
  RunOptions run{options.bandwidthFactor, options.maxRounds, false};
  RunResult result = runSynchronous(g, factory, FaultPlan{}, run);
  for (const auto& [v, out] : result.perNodeOutput)
    col.colors[v] = static_cast<int>(out.at(0));
  col.roundsUsed = result.roundsUsed;
  return col;
}

Coloring distance2Coloring(const Graph& g, const ColoringOptions& options) {
  checkIdSpace(g, options);
  if (g.edgeCount() == 0) return trivialColoring(g, 2);

  const Graph g2 = squareGraph(g);
  long long finalPalette = 0;
  auto schedule = reductionSchedule(options.idSpaceBound + 1, g2.maxDegree(), &finalPalette);

  Coloring col;
  col.hopRadius = 2;
  col.colorCount = static_cast<int>(finalPalette);
  if (schedule.empty()) {
    for (NodeId v : g.nodes()) col.colors[v] = static_cast<int>(v);
    col.roundsUsed = 0;
    return col;
  }

  Distance2Process::Params params;
  params.schedule = &schedule;
  params.colorBytes = bytesFor(options.idSpaceBound);
  params.idBytes = bytesFor(options.idSpaceBound);
  const std::size_t capacity = messageCapacityBytes(g.nodeCount(), options.bandwidthFactor);
  const std::size_t entryBytes = params.idBytes + params.colorBytes;
  if (capacity < entryBytes)
    throw BandwidthError("relay entry of " + std::to_string(entryBytes) +
                         " bytes exceeds message capacity of " + std::to_string(capacity) +
                         " bytes; raise bandwidthFactor");
  params.entriesPerChunk = capacity / entryBytes;
  params.chunkRounds = static_cast<int>(
      (g.maxDegree() + params.entriesPerChunk - 1) / params.entriesPerChunk);

  ProgramFactory factory = [&](NodeId v, const std::vector<NodeId>&) {
    return std::make_unique<Distance2Process>(v, params);
  };
  RunOptions run{options.bandwidthFactor, options.maxRounds, false};
  RunResult result = runSynchronous(g, factory, FaultPlan{}, run);
  for (const auto& [v, out] : result.perNodeOutput)
    col.colors[v] = static_cast<int>(out.at(0));
  col.roundsUsed = result.roundsUsed;
  return col;
}

Coloring reduceToDeltaPlus1(const Graph& g, const Coloring& start,
                            const ColoringOptions& options) {
  if (start.hopRadius != 1) throw ParameterError("start coloring must be 1-hop");
  if (!verifyColoring(g, start)) throw ValidationError("start coloring is not proper");

  const std::size_t maxDeg = g.maxDegree();
  const int target = static_cast<int>(maxDeg) + 1;
  if (start.colorCount <= target) return start;

  const int eliminationRounds = start.colorCount - target;
  const std::size_t colorBytes = bytesFor(start.colorCount);

  ProgramFactory factory = [&](NodeId v, const std::vector<NodeId>& nbrs) {
    std::map<NodeId, long long> neighborColors;
    for (NodeId u : nbrs) neighborColors[u] = start.colors.at(u);
    return std::make_unique<EliminationProcess>(start.colors.at(v),
                                                std::move(neighborColors),
                                                start.colorCount, eliminationRounds,
                                                maxDeg, colorBytes);
  };
  RunOptions run{options.bandwidthFactor, options.maxRounds, false};
  RunResult result = runSynchronous(g, factory, FaultPlan{}, run);

  Coloring col;
  col.hopRadius = 1;
  col.colorCount = target;
  col.roundsUsed = start.roundsUsed + result.roundsUsed;
  for (const auto& [v, out] : result.perNodeOutput)
    col.colors[v] = static_cast<int>(out.at(0));
  return col;
}

SuperClassPartition partitionSuperClasses(int colorCount, int R) {
  if (colorCount < 1) throw ParameterError("colorCount must be >= 1");
  if (R < 1 || R > colorCount)
    throw ParameterError("R must be in [1, colorCount]");
  SuperClassPartition part;
  part.classCount = R;
  part.colorsPerClass = (colorCount + R - 1) / R;
  part.classOf.resize(static_cast<std::size_t>(colorCount));
  for (int c = 0; c < colorCount; ++c)
    part.classOf[static_cast<std::size_t>(c)] = c / part.colorsPerClass;
  return part;
}

bool verifyColoring(const Graph& g, const Coloring& col) {
  for (NodeId v : g.nodes()) {
    auto it = col.colors.find(v);
    if (it == col.colors.end())
      throw ValidationError("coloring misses node " + std::to_string(v));
    if (it->second < 0 || it->second >= col.colorCount)
      throw ValidationError("color of node " + std::to_string(v) + " out of range");
  }
  if (col.hopRadius == 1) {
    for (const auto& [u, v] : g.edges())
      if (col.colors.at(u) == col.colors.at(v)) return false;
    return true;
  }
  if (col.hopRadius != 2) throw ParameterError("hopRadius must be 1 or 2");
  for (NodeId v : g.nodes()) {
    for (NodeId u : g.neighbors(v)) {
      if (col.colors.at(u) == col.colors.at(v)) return false;
      for (NodeId w : g.neighbors(u))
        if (w != v && col.colors.at(w) == col.colors.at(v)) return false;
    }
  }
  return true;
}

}  // namespace kbp
