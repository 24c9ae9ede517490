#pragma once

#include "bisim.hpp"
#include "corpus.hpp"
#include "dot.hpp"
#include "enumerate.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "json_io.hpp"
#include "kripke.hpp"
#include "lifetree.hpp"
#include "model.hpp"
#include "parser.hpp"
#include "semantics.hpp"
#include "truth_value.hpp"
