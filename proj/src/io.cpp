#include "kbp/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kbp/errors.hpp"

namespace kbp {

void writeEdgeList(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

void writeLayoutCsv(std::ostream& out, const GeometricLayout& layout) {
  out << "id,x,y\n";
  out.precision(17);
  for (const auto& [id, pos] : layout.positions)
    out << id << "," << pos.first << "," << pos.second << "\n";
}

void writeStructuralReportJson(std::ostream& out, const StructuralReport& report) {
  nlohmann::json j;
  j["nodeCount"] = report.nodeCount;
  j["edgeCount"] = report.edgeCount;
  j["maxDegree"] = report.maxDegree;
  j["minDegree"] = report.minDegree;
  j["neighborhoodIndependence"] = report.neighborhoodIndependence;
  out << j.dump(2) << "\n";
}

StructuralReport readStructuralReportJson(std::istream& in) {
  nlohmann::json j;
  in >> j;
  StructuralReport report;
  report.nodeCount = j.at("nodeCount").get<std::size_t>();
  report.edgeCount = j.at("edgeCount").get<std::size_t>();
  report.maxDegree = j.at("maxDegree").get<std::size_t>();
  report.minDegree = j.at("minDegree").get<std::size_t>();
  report.neighborhoodIndependence = j.at("neighborhoodIndependence").get<int>();
  return report;
}

void writeColoringCsv(std::ostream& out, const Coloring& col) {
  out << "# colorCount=" << col.colorCount << " hopRadius=" << col.hopRadius
      << " roundsUsed=" << col.roundsUsed << "\n";
  out << "node,color\n";
  for (const auto& [v, c] : col.colors) out << v << "," << c << "\n";
}

Coloring readColoringCsv(std::istream& in) {
  Coloring col;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        std::string key = token.substr(0, eq);
        int value = std::stoi(token.substr(eq + 1));
        if (key == "colorCount") col.colorCount = value;
        else if (key == "hopRadius") col.hopRadius = value;
        else if (key == "roundsUsed") col.roundsUsed = value;
      }
      continue;
    }
    if (line.rfind("node", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long v = 0;
    int c = 0;
    if (!(ls >> v >> c)) throw ParseError("expected 'node,color'", lineNo);
    col.colors[v] = c;
  }
  return col;
}

void writePartitionCsv(std::ostream& out, const SuperClassPartition& partition) {
  out << "# classCount=" << partition.classCount
      << " colorsPerClass=" << partition.colorsPerClass << "\n";
  out << "color,superclass\n";
  for (std::size_t c = 0; c < partition.classOf.size(); ++c)
    out << c << "," << partition.classOf[c] << "\n";
}

SuperClassPartition readPartitionCsv(std::istream& in) {
  SuperClassPartition partition;
  std::string line;
  int lineNo = 0;
  std::map<int, int> classOf;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        std::string key = token.substr(0, eq);
        int value = std::stoi(token.substr(eq + 1));
        if (key == "classCount") partition.classCount = value;
        else if (key == "colorsPerClass") partition.colorsPerClass = value;
      }
      continue;
    }
    if (line.rfind("color", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    int color = 0, cls = 0;
    if (!(ls >> color >> cls)) throw ParseError("expected 'color,superclass'", lineNo);
    classOf[color] = cls;
  }
  partition.classOf.resize(classOf.size());
  for (const auto& [color, cls] : classOf) {
    if (color < 0 || static_cast<std::size_t>(color) >= partition.classOf.size())
      throw ValidationError("partition colors are not contiguous from 0");
    partition.classOf[static_cast<std::size_t>(color)] = cls;
  }
  return partition;
}

}  // namespace kbp
