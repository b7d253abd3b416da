#ifndef TEXWEAVE_TEXWEAVE_HPP
#define TEXWEAVE_TEXWEAVE_HPP

// Umbrella header: defect detection in periodic textures via a Gabor wavelet
// bank, four-corner periodic-block energies, Ward two-clustering, and
// boundary fusion. Individual headers can be included on their own; each is
// self-contained.

#include "texweave/blocks.hpp"
#include "texweave/canny.hpp"
#include "texweave/config.hpp"
#include "texweave/convolve.hpp"
#include "texweave/corpus.hpp"
#include "texweave/errors.hpp"
#include "texweave/fft.hpp"
#include "texweave/fusion.hpp"
#include "texweave/gabor.hpp"
#include "texweave/image_io.hpp"
#include "texweave/log.hpp"
#include "texweave/metrics.hpp"
#include "texweave/padding.hpp"
#include "texweave/periodicity.hpp"
#include "texweave/raster.hpp"
#include "texweave/report.hpp"
#include "texweave/synth.hpp"
#include "texweave/ward.hpp"

#endif
