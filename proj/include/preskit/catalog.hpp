#pragma once

#include <optional>
#include <string>
#include <vector>

#include "preskit/curvegraph.hpp"
#include "preskit/singularity.hpp"

namespace preskit {

// Self-intersection that is either a concrete integer or the symbolic
// central weight -n of a family template.
struct WeightExpr {
  bool symbolic_n = false;
  long long value = 0;

  long long eval(long long n) const { return symbolic_n ? -n : value; }
  std::string str() const {
    return symbolic_n ? "-n" : std::to_string(value);
  }
};

// Deformation dimension, either concrete or of the form n + k.
struct DimExpr {
  bool symbolic = false;
  long long k = 0;
  long long value = 0;

  long long eval(long long n) const { return symbolic ? n + k : value; }
  std::string str() const {
    return symbolic ? "n+" + std::to_string(k) : std::to_string(value);
  }
};

struct CatalogVertex {
  int id = 0;
  WeightExpr weight;
  Marker marker = Marker::Kept;
};

struct CatalogEdge {
  int a = 0;
  int b = 0;
  long long mult = 1;
};

struct CatalogEntry {
  Family family = Family::T6k1;
  bool generic = false;
  long long n = 0;  // finite: the parameter; generic: valid for all n > this
  int index = 1;
  DimExpr dim;
  long long mu = 0;
  long long bo = 0;
  std::vector<CatalogVertex> verts;
  std::vector<CatalogEdge> edges;

  bool covers(long long m) const { return generic ? m > n : m == n; }
  DecoratedGraph instantiate(long long m) const;
};

struct Table1Row {
  Family family;
  long long n;
  long long count;
};

// One row of a classification table: two entries of the same family and
// parameter identified by (index, bo) with contrasting outcomes.
struct TablePairRow {
  Family family;
  long long n;
  int index_a;
  long long bo_a;
  int index_b;
  long long bo_b;
};

struct Catalog {
  std::vector<std::string> header;  // verbatim leading lines (incl. blanks)
  std::vector<CatalogEntry> entries;
  std::vector<Table1Row> table1;
  std::vector<TablePairRow> table2;
  std::vector<TablePairRow> table3;

  std::vector<const CatalogEntry*> find_all(Family f, long long n) const;
  const CatalogEntry* find(Family f, long long n, int index) const;
  const CatalogEntry* find_bo(long long bo) const;
};

Catalog parse_catalog(const std::string& text);
Catalog load_catalog(const std::string& path);
std::string serialize_catalog(const Catalog& c);

// Default on-disk catalog location: the PRESKIT_CATALOG environment
// variable if set, otherwise the build-time default path.
std::string default_catalog_path();

struct VerifyIssue {
  long long bo = 0;
  std::string message;
};

struct VerifyReport {
  bool ok = true;
  int entries_checked = 0;
  std::vector<VerifyIssue> issues;
};

// Revalidates every entry (generic templates at three parameter values):
// the graph must be a legal P-resolution of its family member, and the
// recomputed dimension and Milnor number must match the stored values.
// Also checks bo uniqueness and that table rows reference real entries.
VerifyReport verify_catalog(const Catalog& c);

}  // namespace preskit
