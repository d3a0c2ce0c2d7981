#pragma once

#include "grope/box.hpp"
#include "grope/capped.hpp"
#include "grope/errors.hpp"
#include "grope/expr.hpp"
#include "grope/generate.hpp"
#include "grope/grope.hpp"
#include "grope/io.hpp"
#include "grope/moves.hpp"
#include "grope/parse.hpp"
#include "grope/pipeline.hpp"
#include "grope/render.hpp"
#include "grope/series.hpp"
#include "grope/splitting.hpp"
#include "grope/trace.hpp"
#include "grope/word.hpp"
