#ifndef KBP_IO_HPP
#define KBP_IO_HPP

#include <iosfwd>

#include "kbp/coloring.hpp"
#include "kbp/graph.hpp"

namespace kbp {

void writeEdgeList(std::ostream& out, const Graph& g);
void writeLayoutCsv(std::ostream& out, const GeometricLayout& layout);
void writeStructuralReportJson(std::ostream& out, const StructuralReport& report);
StructuralReport readStructuralReportJson(std::istream& in);
void writeColoringCsv(std::ostream& out, const Coloring& col);
Coloring readColoringCsv(std::istream& in);
void writePartitionCsv(std::ostream& out, const SuperClassPartition& partition);
SuperClassPartition readPartitionCsv(std::istream& in);

}  // namespace kbp

#endif
