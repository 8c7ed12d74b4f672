#ifndef BSV_BSV_HPP
#define BSV_BSV_HPP

#include "bsv/rational.hpp"
#include "bsv/poly.hpp"
#include "bsv/weyl.hpp"
#include "bsv/linear_solve.hpp"
#include "bsv/locoh.hpp"
#include "bsv/bfunction.hpp"
#include "bsv/graph.hpp"
#include "bsv/certify.hpp"
#include "bsv/ledger.hpp"
#include "bsv/parse.hpp"
#include "bsv/toml_subset.hpp"
#include "bsv/scenario.hpp"
#include "bsv/report.hpp"
#include "bsv/presets.hpp"

#endif  // BSV_BSV_HPP
