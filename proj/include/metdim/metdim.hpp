#ifndef METDIM_METDIM_HPP
#define METDIM_METDIM_HPP

#include <metdim/bitset.hpp>
#include <metdim/constructions.hpp>
#include <metdim/edge_list.hpp>
#include <metdim/graph.hpp>
#include <metdim/metric.hpp>
#include <metdim/solver.hpp>

#endif
