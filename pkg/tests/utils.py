def vehicle_rows(frame, vehicle_id):
    rows = frame[frame['vehicle_id'] == vehicle_id]
    assert not rows.empty, f'В журнале нет строк аппарата {vehicle_id}'
    return rows.sort_values('t')


def occupancy(frame, x_min, x_max):
    """Number of vehicles inside the strip x_min <= x <= x_max per tick."""
    inside = frame[(frame['x'] >= x_min) & (frame['x'] <= x_max)]
    return inside.groupby('t')['vehicle_id'].nunique()
