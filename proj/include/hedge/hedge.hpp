// hedge - encrypted vs. compressed payload classification
// Umbrella header.

#ifndef HEDGE_HEDGE_HPP
#define HEDGE_HEDGE_HPP

#include "hedge/bitstream.hpp"
#include "hedge/capture.hpp"
#include "hedge/classifier.hpp"
#include "hedge/corpus.hpp"
#include "hedge/eval.hpp"
#include "hedge/randtests.hpp"
#include "hedge/synth.hpp"

#endif // HEDGE_HEDGE_HPP
