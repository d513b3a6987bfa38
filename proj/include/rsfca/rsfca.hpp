#ifndef RSFCA_RSFCA_HPP
#define RSFCA_RSFCA_HPP

#include "common.hpp"
#include "table.hpp"
#include "discretize.hpp"
#include "boolean.hpp"
#include "rough.hpp"
#include "rules.hpp"
#include "rule_io.hpp"
#include "context.hpp"
#include "concepts.hpp"
#include "implications.hpp"
#include "pipeline.hpp"

#endif
