#pragma once

#include "gecforge/adapter.hpp"
#include "gecforge/align.hpp"
#include "gecforge/arabic.hpp"
#include "gecforge/areta.hpp"
#include "gecforge/bleu.hpp"
#include "gecforge/corrupt.hpp"
#include "gecforge/error.hpp"
#include "gecforge/gec_score.hpp"
#include "gecforge/generate.hpp"
#include "gecforge/metrics.hpp"
#include "gecforge/parallel.hpp"
#include "gecforge/pipeline.hpp"
#include "gecforge/rng.hpp"
#include "gecforge/sentence.hpp"
#include "gecforge/tagcodec.hpp"
#include "gecforge/tags.hpp"
#include "gecforge/utf8.hpp"
