#include "botscan/reference_text.hpp"

namespace botscan {

namespace {

constexpr const char* kReferenceText = R"TXT(
The freighter dropped out of the long dark between the stars and the cabin
lights flickered twice before the old reactor settled. Captain Vel checked
the charts against the beacon code and frowned at the numbers. The outer
moons of Kereth were supposed to be quiet this season, yet the scanner
showed a ring of silent hulls drifting where the trade lane bent toward the
sun. She cut the engines and let the ship coast in the shadow of a cold
asteroid while the navigator worked the problem.

Below decks the engineer argued with the loader droid about the weight of
the water tanks. Every run to the mining stations ended the same way, with
the droid quoting regulations and the engineer quoting gravity. The cargo
manifest said machine parts and medicine, and the hidden compartment under
the aft plating said something else entirely, which was the reason the
captain kept the transponder dark in crowded space.

A voice broke over the open channel, thin and patient, repeating a docking
clearance that no one had requested. Vel knew the trick from her years on
the patrol boats. An empty invitation was bait, and the hook behind it was
usually a tug with a boarding clamp and a crew that did not file reports.
She answered with static and turned the freighter into the glare of the
sun, where cheap sensors went blind and patient voices lost their patience.

The navigator found the gap in the drift and called the burn. For nine long
seconds the old reactor gave everything it had, and the ring of silent
hulls fell away behind them like stones dropped down a well. Nobody spoke
until the stars settled back into their familiar lines. Then the droid
announced that the water tanks had shifted two degrees and the engineer
laughed until her eyes watered.

They made the station by the third watch. The dockmaster stamped the
manifest without reading it, the way dockmasters do on moons where wages
are thin, and the medicine went down the lift to the clinic levels before
the ink was dry. Vel paid the berth fee in hard coin and bought the crew a
hot meal with what was left. Out the viewport the trade lane glittered,
patient and endless, and somewhere along it another ring of silent hulls
was already gathering. The long dark did not forgive carelessness, she told
the navigator, and the navigator, who had heard the speech before, ordered
another plate of noodles and said the long dark could wait until morning.
)TXT";

}  // namespace

std::string_view builtin_reference_text() { return kReferenceText; }

}  // namespace botscan
