import os
from typing import Optional

import simplejson as json


class ShotLogger:
    """Writes a JSON-lines stream of shot records plus a meta.json-style sidecar describing the run.

    Nothing host- or time-dependent is stored, so identical arguments and seeds give identical files.
    """

    def __init__(self, path: str, run_info: dict):
        self.path = path
        self.meta_file = f"{os.path.splitext(path)[0]}.meta.json"
        self.n_records = 0

        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)

        # truncate the stream, then write the run description
        self._stream = open(self.path, "w", newline="\n")
        with open(self.meta_file, "w", newline="\n") as f:
            json.dump(self._make_meta_dict(run_info), f, indent=2)

    @staticmethod
    def _make_meta_dict(run_info: dict) -> dict:
        return dict(
            **run_info,
            n_records=0,
            ended_naturally=False,
        )

    def log(self, record) -> None:
        """Append one shot record."""
        self._stream.write(json.dumps(record.to_dict()) + "\n")
        self.n_records += 1

    def finalize(self, summary: Optional[dict] = None):
        """Close the stream and mark the run as complete in the sidecar.

        Args:
            summary: final estimate of the run, stored under "summary"
        """
        self._stream.close()

        with open(self.meta_file, "r") as f:
            meta = json.load(f)

        meta["ended_naturally"] = True
        meta["n_records"] = self.n_records
        if summary is not None:
            meta["summary"] = summary

        with open(self.meta_file, "w", newline="\n") as f:
            json.dump(meta, f, indent=2)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if not self._stream.closed:
            self._stream.close()
